"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI copies into
its JSON output, plus the process exit status it maps to.
"""

from __future__ import annotations


class CurvzetaError(Exception):
    code = "error"
    exit_status = 1


class ComputationError(CurvzetaError):
    code = "computation_error"
    exit_status = 1


class UsageError(CurvzetaError):
    code = "usage_error"
    exit_status = 2


# motivic ring

class NonInvertibleDenominator(ComputationError):
    code = "non_invertible_denominator"


class NonIntegralSpecialization(ComputationError):
    code = "non_integral_specialization"


# resolution

class IrrationalCenter(ComputationError):
    code = "irrational_center"


class NonReducedInput(ComputationError):
    code = "non_reduced_input"


class UnknownDivisor(ComputationError):
    code = "unknown_divisor"


# zeta engine

class MissingClassData(ComputationError):
    code = "missing_class_data"


class MissingBaseCase(ComputationError):
    code = "missing_base_case"


class DivisionByZeroSeries(ComputationError):
    code = "division_by_zero_series"


# jet oracle

class BadReduction(ComputationError):
    code = "bad_reduction"


class BudgetExceeded(ComputationError):
    code = "budget_exceeded"


class VerificationMismatch(ComputationError):
    code = "verification_mismatch"
    exit_status = 3


# parsing / input files

class ParseError(UsageError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    code = "syntax_error"

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class ZeroConstantViolation(UsageError):
    code = "zero_constant_violation"


class ResolutionFileError(UsageError):
    code = "resolution_file_error"
