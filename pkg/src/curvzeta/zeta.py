"""Curvilinear Igusa zeta function and classes of curvilinear Hilbert schemes.

Two independent routes lead from resolution data to the classes
``H_k = [CHilb^k_0]``:

* the forward recursion on the coefficients of the Denef-type formula
  (:func:`hilb_recursion`);
* solving the zeta/generating-series identity for ``Q(T) = sum H_k T^k`` in
  closed form and expanding (:func:`q_series_closed`).

Throughout ``T`` stands for ``L^-s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MissingBaseCase, MissingClassData
from .resolution import (
    ResolutionData,
    class_open,
    class_strict,
    order_one_set,
    strict_meets_order_one,
)
from .ring import BiPoly, FactoredRational, L, LaurentPoly, T, expand_series, rat_eq

__all__ = [
    "HilbTable",
    "CrossCheck",
    "denef_zeta",
    "hilb_recursion",
    "q_series_closed",
    "igusa_from_Q",
    "threshold",
    "cross_check",
]

_L_MINUS_T = BiPoly({(1, 0): 1, (0, 1): -1})
# 1/(L^(s+1) - 1) with L^-s = T
_GEOMETRIC = FactoredRational(T, [(_L_MINUS_T, 1)])


@dataclass(frozen=True)
class HilbTable:
    """Classes ``H_k`` for ``k = 2 .. k_max``."""

    classes: tuple[LaurentPoly, ...]
    k_max: int
    threshold: int | None = None

    def __getitem__(self, k: int) -> LaurentPoly:
        if not 2 <= k <= self.k_max:
            raise KeyError(k)
        return self.classes[k - 2]

    def items(self):
        return zip(range(2, self.k_max + 1), self.classes)

    def ks(self) -> range:
        return range(2, self.k_max + 1)


def _divisor_classes(res: ResolutionData, i: int) -> tuple[LaurentPoly, LaurentPoly]:
    d = res.divisor(i)
    if res.ambient_dim != 2 and (d.open_class is None or d.strict_class is None):
        raise MissingClassData(
            f"divisor {i} has order 1 but no class_open/class_strict "
            f"(required when ambient dimension is {res.ambient_dim})"
        )
    return class_open(res, i), class_strict(res, i)


def _order_one(res: ResolutionData) -> list[tuple[int, int, LaurentPoly, LaurentPoly]]:
    """``(N, nu, open class, strict class)`` for every divisor of order 1."""
    out = []
    for i in sorted(order_one_set(res)):
        d = res.divisor(i)
        out.append((d.N, d.nu, *_divisor_classes(res, i)))
    return out


def _denef_sum(res: ResolutionData) -> FactoredRational:
    """The zeta function divided by its prefactor ``(L - 1)/L^2``."""
    n = res.ambient_dim
    total = FactoredRational(0)
    for N, nu, open_cls, strict_cls in _order_one(res):
        term = FactoredRational(open_cls) + _GEOMETRIC * ((L - 1) * strict_cls)
        total = total + term * BiPoly.monomial(-nu, N)
    return total * BiPoly.monomial(-(n - 1), 0)


def denef_zeta(res: ResolutionData) -> FactoredRational:
    """Curvilinear Igusa zeta function from the divisors of order 1."""
    return (_denef_sum(res) * FactoredRational(L - 1, [(BiPoly.monomial(2, 0), 1)])).cancel()


def _repunit(n: int) -> LaurentPoly:
    # (L^n - 1)/(L - 1)
    return LaurentPoly({e: 1 for e in range(n)})


def _constant_term(n: int, verbatim: bool) -> FactoredRational:
    """First term of the zeta/series identity, divided by ``(L - 1)/L^2``.

    The corrected term is ``T*(L^-n - L^-2n)``.  ``verbatim=True`` gives the
    variant with an extra ``L^-n`` factor, which is inconsistent with the
    smooth-line example; it is kept only to demonstrate that.
    """
    shift = 2 - 3 * n if verbatim else 2 - 2 * n
    return FactoredRational(_repunit(n) * BiPoly.monomial(shift, 1))


def igusa_from_Q(q: FactoredRational, n: int, *, verbatim: bool = False) -> FactoredRational:
    """Zeta function from the generating series ``Q`` of Hilbert-scheme classes.

    ``T*(L^-n - L^-2n) + (L - 1)/L^2 * (1 - 1/T) * Q(T * L^-(n-1))``
    """
    q = FactoredRational.coerce(q)
    prefactor = FactoredRational(L - 1, [(BiPoly.monomial(2, 0), 1)])
    one_minus_inv_t = FactoredRational(T - 1, [(T, 1)])
    body = _constant_term(n, verbatim) + one_minus_inv_t * q.substitute_T(-(n - 1), 1)
    return (prefactor * body).cancel()


def q_series_closed(res: ResolutionData, *, verbatim: bool = False) -> FactoredRational:
    """Closed form of ``Q(T) = sum_k H_k T^k`` by inverting :func:`igusa_from_Q`."""
    n = res.ambient_dim
    shifted = (_denef_sum(res) - _constant_term(n, verbatim)) * FactoredRational(
        T, [(T - 1, 1)]
    )
    return shifted.substitute_T(n - 1, 1).cancel()


def threshold(res: ResolutionData, smooth_branch: bool) -> int | None:
    """Largest ``N_i`` over divisors of order 1, when no branch is smooth."""
    if smooth_branch:
        return None
    Ns = [res.divisor(i).N for i in order_one_set(res)]
    return max(Ns) if Ns else None


def _base_case(res: ResolutionData) -> LaurentPoly:
    if res.h2 is not None:
        return res.h2
    if res.ambient_dim != 2 or res.origin_mult is None:
        raise MissingBaseCase(
            f"H_2 must be supplied explicitly (ambient dimension {res.ambient_dim}, "
            f"origin multiplicity {res.origin_mult})"
        )
    return LaurentPoly(1) if res.origin_mult == 1 else L + 1


def hilb_recursion(res: ResolutionData, k_max: int) -> HilbTable:
    """``H_2 .. H_kmax`` by solving the coefficient identities forward from ``H_2``."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    n = res.ambient_dim
    data = _order_one(res)
    H = [_base_case(res)]
    for k in range(2, k_max):
        rhs = LaurentPoly()
        for N, nu, open_cls, strict_cls in data:
            if N == k:
                rhs = rhs + open_cls.shift(-nu)
            m = k - N
            if m >= 1 and strict_cls:
                rhs = rhs + ((L - 1) * strict_cls).shift(-nu - m)
        rhs = rhs.shift(-(n - 1))
        H.append(H[-1].shift(n - 1) - rhs.shift((n - 1) * (k + 1)))
    thr = None
    if n == 2:
        thr = threshold(res, strict_meets_order_one(res))
    return HilbTable(tuple(H), k_max, thr)


@dataclass(frozen=True)
class CrossCheck:
    """Outcome of comparing the two routes on one resolution."""

    zeta_match: bool
    coefficient_mismatches: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.zeta_match and not self.coefficient_mismatches


def cross_check(res: ResolutionData, k_max: int = 8, *, verbatim: bool = False) -> CrossCheck:
    """Zeta round trip through ``Q`` and coefficient-wise agreement with the recursion."""
    q = q_series_closed(res, verbatim=verbatim)
    zeta_ok = rat_eq(igusa_from_Q(q, res.ambient_dim, verbatim=verbatim), denef_zeta(res))
    series = expand_series(q, k_max)
    table = hilb_recursion(res, k_max)
    bad = tuple(k for k in table.ks() if series[k] != table[k])
    if series[0] or series[1]:
        bad = (0,) + bad
    return CrossCheck(zeta_ok, bad)
