"""Curvilinear Igusa zeta functions and Hilbert-scheme classes of plane curves.

Typical use::

    from curvzeta import parse_curve, resolve, hilb_recursion

    res = resolve(parse_curve("y^2 - x^3"))
    hilb_recursion(res, 6).classes   # (L + 1, L, 0, 0, 0)
"""

__version__ = "0.1.0"

from .curve import CurvePoly, multiplicity_at
from .jets import JetCountReport, count_smooth_jets, verify
from .parsing import parse_curve, parse_laurent, parse_rational
from .resolution import (
    Divisor,
    ResolutionData,
    class_open,
    has_smooth_branch,
    order_one_set,
    resolve,
)
from .ring import (
    BiPoly,
    FactoredRational,
    L,
    LaurentPoly,
    SeriesT,
    T,
    expand_series,
    rat_eq,
    specialize,
    substitute_T,
)
from .zeta import (
    HilbTable,
    cross_check,
    denef_zeta,
    hilb_recursion,
    igusa_from_Q,
    q_series_closed,
    threshold,
)

__all__ = [
    "BiPoly",
    "CurvePoly",
    "Divisor",
    "FactoredRational",
    "HilbTable",
    "JetCountReport",
    "L",
    "LaurentPoly",
    "ResolutionData",
    "SeriesT",
    "T",
    "class_open",
    "count_smooth_jets",
    "cross_check",
    "denef_zeta",
    "expand_series",
    "has_smooth_branch",
    "hilb_recursion",
    "igusa_from_Q",
    "multiplicity_at",
    "order_one_set",
    "parse_curve",
    "parse_laurent",
    "parse_rational",
    "q_series_closed",
    "rat_eq",
    "resolve",
    "specialize",
    "substitute_T",
    "threshold",
    "verify",
]
