"""Exact arithmetic in the fragment of the Grothendieck ring we compute in.

``L`` stands for the class of the affine line and ``T`` for ``L^-s``.  Three
value types cover everything:

* :class:`LaurentPoly` -- integer Laurent polynomials in ``L`` (motivic classes);
* :class:`BiPoly` -- integer polynomials in ``L^{+-1}`` and ``T`` (``T >= 0``);
* :class:`FactoredRational` -- a ``BiPoly`` over an explicitly factored
  denominator (zeta functions and closed-form generating series).

Denominators are never reduced by a gcd. Two rationals are equal when the
cross-multiplied numerators agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import NonIntegralSpecialization, NonInvertibleDenominator

__all__ = [
    "LaurentPoly",
    "BiPoly",
    "FactoredRational",
    "SeriesT",
    "L",
    "T",
    "rat_eq",
    "expand_series",
    "substitute_T",
    "specialize",
]


def _format_terms(terms: Iterable[tuple[int, str]]) -> str:
    """Join ``(coefficient, monomial)`` pairs; an empty monomial means a constant."""
    out: list[str] = []
    for c, mono in terms:
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out) if out else "0"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


class _Sparse:
    """Shared machinery for dict-of-monomials polynomials with int coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping | int | None = None):
        if coeffs is not None and not isinstance(coeffs, Mapping):
            other = self._coerce(coeffs)
            if other is NotImplemented:
                raise TypeError(f"cannot build {type(self).__name__} from {coeffs!r}")
            coeffs = other._c
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if not isinstance(v, int):
                    if isinstance(v, Fraction) and v.denominator == 1:
                        v = v.numerator
                    else:
                        raise TypeError(f"coefficients must be integers, got {v!r}")
                if v:
                    c[self._check_key(k)] = v
        self._c = c
        self._hash = None

    # subclasses define these
    @staticmethod
    def _check_key(k):
        raise NotImplementedError

    @staticmethod
    def _key_mul(a, b):
        raise NotImplementedError

    @classmethod
    def _coerce(cls, other):
        raise NotImplementedError

    @classmethod
    def _raw(cls, c: dict):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __iter__(self):
        return iter(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._c.items())))
        return self._hash

    def __neg__(self):
        return self._raw({k: -v for k, v in self._c.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return self._raw(c)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c: dict = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                k = self._key_mul(k1, k2)
                c[k] = c.get(k, 0) + v1 * v2
        return self._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((k, v),) = self._c.items()
            if v not in (1, -1):
                raise ValueError("monomial must have unit coefficient to invert")
            return self._monomial_inverse(k, v) ** (-e)
        result = self._coerce(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class LaurentPoly(_Sparse):
    """Integer Laurent polynomial in ``L``; stored as ``{exponent: coefficient}``.

    >>> (L - 1) * (L + 1)
    LaurentPoly('L^2 - 1')
    """

    __slots__ = ()

    @staticmethod
    def _check_key(k):
        if not isinstance(k, int):
            raise TypeError(f"exponent must be an int, got {k!r}")
        return k

    @staticmethod
    def _key_mul(a, b):
        return a + b

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return cls._raw({0: other} if other else {})
        if isinstance(other, Fraction) and other.denominator == 1:
            return cls._coerce(other.numerator)
        return NotImplemented

    def _monomial_inverse(self, k, v):
        return LaurentPoly._raw({-k: v})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of the zero polynomial")
        return min(self._c)

    def leading_coefficient(self) -> int:
        return self._c[self.degree()] if self._c else 0

    def is_polynomial(self) -> bool:
        """True when no negative exponent of ``L`` occurs."""
        return all(e >= 0 for e in self._c)

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``L^e``."""
        return LaurentPoly._raw({k + e: v for k, v in self._c.items()})

    def to_str(self, var: str = "L") -> str:
        return _format_terms(
            (self._c[e], _power(var, e)) for e in sorted(self._c, reverse=True)
        )

    __str__ = to_str

    # specializations ----------------------------------------------------

    def euler(self) -> int:
        return sum(self._c.values())

    def point_count(self, q: int) -> int:
        if q == 0 and any(e < 0 for e in self._c):
            raise ValueError("cannot evaluate negative powers of L at 0")
        total = sum(Fraction(q) ** e * v for e, v in self._c.items())
        if total.denominator != 1:
            raise NonIntegralSpecialization(
                f"{self} at L={q} evaluates to the non-integer {total}"
            )
        return total.numerator

    def weight(self) -> "LaurentPoly":
        """Substitute ``L -> t^2``; render the result with ``to_str('t')``."""
        if not self.is_polynomial():
            raise ValueError("weight polynomial needs non-negative exponents of L")
        return LaurentPoly._raw({2 * e: v for e, v in self._c.items()})


class BiPoly(_Sparse):
    """Integer polynomial in ``L^{+-1}`` and ``T``; keys are ``(L_exp, T_exp)``."""

    __slots__ = ()

    @staticmethod
    def _check_key(k):
        a, b = k
        if not (isinstance(a, int) and isinstance(b, int)):
            raise TypeError(f"exponents must be ints, got {k!r}")
        if b < 0:
            raise ValueError("negative powers of T are not representable")
        return (a, b)

    @staticmethod
    def _key_mul(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, LaurentPoly):
            return cls._raw({(e, 0): v for e, v in other.items()})
        if isinstance(other, int):
            return cls._raw({(0, 0): other} if other else {})
        if isinstance(other, Fraction) and other.denominator == 1:
            return cls._coerce(other.numerator)
        return NotImplemented

    def _monomial_inverse(self, k, v):
        if k[1]:
            raise ValueError("negative powers of T are not representable")
        return BiPoly._raw({(-k[0], 0): v})

    @classmethod
    def monomial(cls, l_exp: int = 0, t_exp: int = 0, c: int = 1) -> "BiPoly":
        return cls({(l_exp, t_exp): c})

    def t_degree(self) -> int:
        return max((b for _, b in self._c), default=0)

    def t_valuation(self) -> int:
        return min((b for _, b in self._c), default=0)

    def t_columns(self) -> dict[int, LaurentPoly]:
        """Group terms by ``T`` exponent: ``{k: coefficient of T^k}``."""
        cols: dict[int, dict[int, int]] = {}
        for (a, b), v in self._c.items():
            cols.setdefault(b, {})[a] = v
        return {b: LaurentPoly._raw(c) for b, c in cols.items()}

    def constant_in_T(self) -> LaurentPoly:
        return LaurentPoly._raw({a: v for (a, b), v in self._c.items() if b == 0})

    def is_laurent(self) -> bool:
        return all(b == 0 for _, b in self._c)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} involves T")
        return self.constant_in_T()

    def substitute_T(self, l_exp: int, t_exp: int) -> "BiPoly":
        """Replace ``T`` by ``L^l_exp * T^t_exp``."""
        if t_exp < 0:
            raise ValueError("T must map to a non-negative power of T")
        c: dict = {}
        for (a, b), v in self._c.items():
            k = (a + l_exp * b, t_exp * b)
            c[k] = c.get(k, 0) + v
        return BiPoly._raw({k: v for k, v in c.items() if v})

    def shift(self, l_exp: int = 0, t_exp: int = 0) -> "BiPoly":
        return BiPoly._raw({(a + l_exp, b + t_exp): v for (a, b), v in self._c.items()})

    def to_str(self) -> str:
        keys = sorted(self._c, key=lambda k: (-k[0], k[1]))
        terms = []
        for a, b in keys:
            mono = "*".join(p for p in (_power("L", a), _power("T", b)) if p)
            terms.append((self._c[(a, b)], mono))
        return _format_terms(terms)

    __str__ = to_str


L = LaurentPoly({1: 1})
T = BiPoly({(0, 1): 1})

Scalar = Union[int, LaurentPoly, BiPoly]


def _factor_str(f: BiPoly, mult: int = 1) -> str:
    s = str(f)
    atomic = not any(ch in s for ch in " *-") and (mult == 1 or "^" not in s)
    body = s if atomic else f"({s})"
    return body if mult == 1 else f"{body}^{mult}"


class FactoredRational:
    """``numerator / prod(factor**mult)`` over ``BiPoly``.

    The constructor pulls the monomial content and sign out of every
    factor, folds unit monomials (``+-L^a T^b``) into the numerator wherever
    that is possible without creating negative powers of ``T``, and merges
    repeated factors.  :meth:`cancel` removes factors that divide the
    numerator exactly; nothing is ever reduced by a gcd.
    """

    __slots__ = ("numerator", "denominator")
    __hash__ = None  # equality is not structural

    def __init__(self, numerator: Scalar, denominator: Iterable[tuple[BiPoly, int]] = ()):
        num = BiPoly._coerce(numerator)
        if num is NotImplemented:
            raise TypeError(f"cannot use {numerator!r} as a numerator")
        merged: dict[BiPoly, int] = {}
        for f, m in denominator:
            f = BiPoly._coerce(f)
            if f is NotImplemented or f.is_zero():
                raise ZeroDivisionError("zero denominator factor")
            if m < 0:
                raise ValueError("factor multiplicities must be positive")
            if m == 0 or f == 1:
                continue
            if f == -1:
                if m % 2:
                    num = -num
                continue
            if len(f) > 1:
                unit, f = _split_content(f)
                if unit != 1:
                    merged[unit] = merged.get(unit, 0) + m
            merged[f] = merged.get(f, 0) + m

        if num.is_zero():
            merged = {}
        for f in list(merged):
            if len(f) != 1:
                continue
            ((a, b), v), = f.items()
            if v not in (1, -1):
                continue
            m = merged.pop(f)
            if v == -1 and m % 2:
                num = -num
            cancel = min(b * m, num.t_valuation()) if b else 0
            num = num.shift(-a * m, -cancel)
            rest_b = b * m - cancel
            if rest_b:
                tf = BiPoly.monomial(0, 1)
                merged[tf] = merged.get(tf, 0) + rest_b

        self.numerator: BiPoly = num
        self.denominator: tuple[tuple[BiPoly, int], ...] = tuple(
            sorted(merged.items(), key=lambda fm: (len(fm[0]), str(fm[0])))
        )

    @classmethod
    def coerce(cls, x) -> "FactoredRational":
        if isinstance(x, FactoredRational):
            return x
        b = BiPoly._coerce(x)
        if b is NotImplemented:
            raise TypeError(f"cannot convert {x!r} to FactoredRational")
        return cls(b)

    @staticmethod
    def _maybe(x):
        try:
            return FactoredRational.coerce(x)
        except TypeError:
            return NotImplemented

    def denominator_product(self) -> BiPoly:
        out = BiPoly._coerce(1)
        for f, m in self.denominator:
            out = out * f**m
        return out

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return not self.denominator

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> "FactoredRational":
        return FactoredRational(-self.numerator, self.denominator)

    def __add__(self, other) -> "FactoredRational":
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        a, b = dict(self.denominator), dict(o.denominator)
        common = {f: max(a.get(f, 0), b.get(f, 0)) for f in a.keys() | b.keys()}

        def lift(num: BiPoly, den: dict) -> BiPoly:
            for f, m in common.items():
                extra = m - den.get(f, 0)
                if extra:
                    num = num * f**extra
            return num

        return FactoredRational(
            lift(self.numerator, a) + lift(o.numerator, b), common.items()
        )

    __radd__ = __add__

    def __sub__(self, other) -> "FactoredRational":
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "FactoredRational":
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "FactoredRational":
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        return FactoredRational(
            self.numerator * o.numerator, self.denominator + o.denominator
        )

    __rmul__ = __mul__

    def inverse(self) -> "FactoredRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FactoredRational(self.denominator_product(), [(self.numerator, 1)])

    def __truediv__(self, other) -> "FactoredRational":
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "FactoredRational":
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "FactoredRational":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return FactoredRational(
            self.numerator**e, [(f, m * e) for f, m in self.denominator]
        )

    def __eq__(self, other) -> bool:
        o = self._maybe(other)
        if o is NotImplemented:
            return NotImplemented
        return rat_eq(self, o)

    def substitute_T(self, l_exp: int, t_exp: int = 1) -> "FactoredRational":
        return substitute_T(self, l_exp, t_exp)

    def cancel(self) -> "FactoredRational":
        """Drop denominator factors that divide the numerator exactly."""
        num = self.numerator
        kept = []
        for f, m in self.denominator:
            while m:
                q = _exact_div(num, f)
                if q is None:
                    break
                num, m = q, m - 1
            if m:
                kept.append((f, m))
        return FactoredRational(num, kept)

    def to_str(self) -> str:
        num = str(self.numerator)
        if not self.denominator:
            return num
        if len(self.numerator) > 1:
            num = f"({num})"
        parts = []
        for f, m in self.denominator:
            parts.append(_factor_str(f, m))
        den = "*".join(parts)
        if len(parts) > 1 or (len(self.denominator) == 1 and self.denominator[0][1] > 1):
            den = f"({den})"
        return f"{num} / {den}"

    __str__ = to_str

    def __repr__(self) -> str:
        return f"FactoredRational({str(self)!r})"



def _split_content(f: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Write ``f = unit * g`` with ``unit = +-L^a T^b`` and ``g`` primitive in both variables.

    The sign is fixed so that the lowest ``T`` column of ``g`` has a positive
    leading coefficient; that makes ``L - T`` and ``T - L`` the same factor.
    """
    a = min(l for l, _ in f.coeffs)
    b = min(t for _, t in f.coeffs)
    g = f.shift(-a, -b)
    low = g.t_columns()[0]
    sign = 1 if low.leading_coefficient() > 0 else -1
    return BiPoly.monomial(a, b, sign), g * sign


def _laurent_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """``a / b`` in ``Z[L, L^-1]`` or ``None`` when it does not divide."""
    va, vb = a.valuation(), b.valuation()
    num = [Fraction(0)] * (a.degree() - va + 1)
    for e, c in a.items():
        num[e - va] = Fraction(c)
    den = [Fraction(0)] * (b.degree() - vb + 1)
    for e, c in b.items():
        den[e - vb] = Fraction(c)
    if len(den) > len(num):
        return None
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        quot[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num) or any(c.denominator != 1 for c in quot):
        return None
    return LaurentPoly({i + va - vb: int(c) for i, c in enumerate(quot) if c})


def _exact_div(a: BiPoly, b: BiPoly) -> BiPoly | None:
    """``a / b`` in ``Z[L, L^-1][T]`` or ``None``; long division on ``T``-degree."""
    deg_b = b.t_degree()
    lead_b = b.t_columns()[deg_b]
    q = BiPoly()
    r = a
    while not r.is_zero():
        d = r.t_degree()
        if d < deg_b:
            return None
        c = _laurent_exact_div(r.t_columns()[d], lead_b)
        if c is None:
            return None
        term = BiPoly({(e, d - deg_b): v for e, v in c.items()})
        q = q + term
        r = r - term * b
    return q


def rat_eq(a: FactoredRational, b: FactoredRational) -> bool:
    """Equality of rational functions by cross-multiplication."""
    a = FactoredRational.coerce(a)
    b = FactoredRational.coerce(b)
    return a.numerator * b.denominator_product() == b.numerator * a.denominator_product()


def substitute_T(r: FactoredRational, a: int, b: int = 1) -> FactoredRational:
    """Replace ``T`` by ``L^a * T^b`` (``b >= 1``) throughout ``r``."""
    if b < 1:
        raise ValueError("substitution must send T to a positive power of T")
    r = FactoredRational.coerce(r)
    return FactoredRational(
        r.numerator.substitute_T(a, b),
        [(f.substitute_T(a, b), m) for f, m in r.denominator],
    )


@dataclass(frozen=True)
class SeriesT:
    """Power series in ``T`` truncated after ``T^order``."""

    coefficients: tuple[LaurentPoly, ...]
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("need exactly order + 1 coefficients")

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coefficients[k]

    def __iter__(self) -> Iterator[LaurentPoly]:
        return iter(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __mul__(self, other: "SeriesT") -> "SeriesT":
        K = min(self.order, other.order)
        zero = LaurentPoly()
        out = []
        for k in range(K + 1):
            acc = zero
            for j in range(k + 1):
                if self[j] and other[k - j]:
                    acc = acc + self[j] * other[k - j]
            out.append(acc)
        return SeriesT(tuple(out), K)

    @classmethod
    def from_bipoly(cls, p: BiPoly, order: int) -> "SeriesT":
        cols = p.t_columns()
        return cls(tuple(cols.get(k, LaurentPoly()) for k in range(order + 1)), order)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = _power("T", k)
            body = str(c)
            if mono:
                body = f"({body})*{mono}" if len(c) > 1 else (
                    mono if body == "1" else f"-{mono}" if body == "-1" else f"{body}*{mono}"
                )
            terms.append(body)
        tail = f"O(T^{self.order + 1})"
        return " + ".join(terms + [tail])


def _inverse_series(f: BiPoly, order: int) -> SeriesT:
    unit = f.constant_in_T()
    if len(unit) != 1 or next(iter(unit.items()))[1] not in (1, -1):
        raise NonInvertibleDenominator(
            f"factor {f} has T^0 part {unit}, which is not +-L^a"
        )
    unit_inv = unit**-1
    fs = SeriesT.from_bipoly(f, order)
    inv = [unit_inv]
    for k in range(1, order + 1):
        acc = LaurentPoly()
        for j in range(1, k + 1):
            if fs[j]:
                acc = acc + fs[j] * inv[k - j]
        inv.append(-(unit_inv * acc))
    return SeriesT(tuple(inv), order)


def expand_series(r: FactoredRational, order: int) -> SeriesT:
    """Power-series expansion of ``r`` in ``T`` up to and including ``T^order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    r = FactoredRational.coerce(r)
    out = SeriesT.from_bipoly(r.numerator, order)
    for f, m in r.denominator:
        inv = _inverse_series(f, order)
        for _ in range(m):
            out = out * inv
    return out


def specialize(p: LaurentPoly, mode: str, q: int | None = None):
    """Evaluate a class under one of the standard ring morphisms.

    ``mode`` is ``"euler"`` (``L -> 1``), ``"point_count"`` (``L -> q``) or
    ``"weight"`` (``L -> t^2``, returned as a ``LaurentPoly`` in ``t``).
    """
    p = LaurentPoly._coerce(p)
    if mode == "euler":
        return p.euler()
    if mode == "point_count":
        if q is None:
            raise ValueError("point_count needs q")
        return p.point_count(q)
    if mode == "weight":
        return p.weight()
    raise ValueError(f"unknown specialization {mode!r}")
