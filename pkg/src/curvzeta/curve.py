"""Exact bivariate polynomials over Q and the plane-curve input type."""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping

from .errors import ZeroConstantViolation

Monomial = tuple[int, int]


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class Poly2:
    """Polynomial in two variables with rational coefficients.

    Keys are ``(i, j)`` meaning ``x^i y^j`` (or ``u^i v^j`` in a local chart).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Monomial, object] | None = None):
        c: dict[Monomial, Fraction] = {}
        for (i, j), v in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            v = _frac(v)
            if v:
                c[(int(i), int(j))] = c.get((int(i), int(j)), Fraction(0)) + v
        self._c = {k: v for k, v in c.items() if v}

    @classmethod
    def _raw(cls, c: dict) -> "Poly2":
        obj = Poly2.__new__(Poly2)
        obj._c = c
        return obj

    @property
    def coeffs(self) -> dict[Monomial, Fraction]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({(0, 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "Poly2") -> "Poly2":
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return Poly2._raw(c)

    def __neg__(self) -> "Poly2":
        return Poly2._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other) -> "Poly2":
        if isinstance(other, (int, Fraction)):
            other = Poly2({(0, 0): other})
        c: dict[Monomial, Fraction] = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                k = (i1 + i2, j1 + j2)
                c[k] = c.get(k, 0) + v1 * v2
        return Poly2._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly2":
        out = Poly2({(0, 0): 1})
        for _ in range(e):
            out = out * self
        return out

    def total_degree(self) -> int:
        return max((i + j for i, j in self._c), default=-1)

    def order(self) -> int:
        """Lowest total degree of a nonzero term (the multiplicity at the origin)."""
        return min((i + j for i, j in self._c), default=0)

    def homogeneous_part(self, d: int) -> "Poly2":
        return Poly2._raw({k: v for k, v in self._c.items() if sum(k) == d})

    def constant_term(self) -> Fraction:
        return self._c.get((0, 0), Fraction(0))

    def evaluate(self, x, y) -> Fraction:
        return sum((v * Fraction(x) ** i * Fraction(y) ** j for (i, j), v in self._c.items()), Fraction(0))

    def diff(self, var: int) -> "Poly2":
        c: dict[Monomial, Fraction] = {}
        for (i, j), v in self._c.items():
            e = (i, j)[var]
            if e:
                k = (i - 1, j) if var == 0 else (i, j - 1)
                c[k] = v * e
        return Poly2._raw(c)

    def translate(self, a, b) -> "Poly2":
        """The polynomial ``g(u + a, v + b)``."""
        a, b = Fraction(a), Fraction(b)
        if not a and not b:
            return self
        c: dict[Monomial, Fraction] = {}
        for (i, j), v in self._c.items():
            for s in range(i + 1):
                cs = comb(i, s) * a ** (i - s)
                if not cs:
                    continue
                for r in range(j + 1):
                    cr = comb(j, r) * b ** (j - r)
                    if cr:
                        c[(s, r)] = c.get((s, r), 0) + v * cs * cr
        return Poly2._raw({k: v for k, v in c.items() if v})

    def restrict(self, var: int, value=0) -> dict[int, Fraction]:
        """Univariate restriction: set variable ``var`` to ``value``.

        Returns ``{exponent: coefficient}`` in the remaining variable.
        """
        value = Fraction(value)
        out: dict[int, Fraction] = {}
        for (i, j), v in self._c.items():
            fixed, free = (i, j) if var == 0 else (j, i)
            if fixed and not value:
                continue
            out[free] = out.get(free, 0) + v * value**fixed
        return {k: v for k, v in out.items() if v}

    def divide_monomial(self, i0: int, j0: int) -> "Poly2":
        c = {}
        for (i, j), v in self._c.items():
            if i < i0 or j < j0:
                raise ValueError(f"not divisible by u^{i0} v^{j0}")
            c[(i - i0, j - j0)] = v
        return Poly2._raw(c)

    def max_power_dividing(self, var: int) -> int:
        return min((k[var] for k in self._c), default=0)

    def to_str(self, names: tuple[str, str] = ("x", "y")) -> str:
        keys = sorted(self._c, key=lambda k: (-(k[0] + k[1]), -k[0]))
        out = []
        for i, j in keys:
            v = self._c[(i, j)]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, (i, j)) if e
            )
            mag = abs(v)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if v > 0 else "-" + body)
            else:
                out.append((" + " if v > 0 else " - ") + body)
        return "".join(out) if out else "0"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class CurvePoly(Poly2):
    """Defining polynomial ``f`` of a plane curve germ at the origin.

    Nonzero, with ``f(0, 0) = 0``.
    """

    __slots__ = ()

    def __init__(self, coeffs: Mapping[Monomial, object] | Poly2):
        if isinstance(coeffs, Poly2):
            coeffs = coeffs.coeffs
        super().__init__(coeffs)
        if self.is_zero():
            raise ValueError("the zero polynomial does not define a curve")
        if self.constant_term():
            raise ZeroConstantViolation(
                f"f(0,0) = {self.constant_term()} != 0; the curve must pass through the origin"
            )

    def denominators(self) -> set[int]:
        return {v.denominator for v in self._c.values()}

    def reduce_mod(self, p: int) -> dict[Monomial, int]:
        """Coefficients in F_p. Caller ensures ``p`` divides no denominator."""
        out = {}
        for k, v in self._c.items():
            r = v.numerator * pow(v.denominator, -1, p) % p
            if r:
                out[k] = r
        return out


def multiplicity_at(f: Poly2, point=(0, 0)) -> int:
    """Multiplicity of ``f`` at a rational point; 0 when ``f`` does not vanish there."""
    g = f.translate(*point)
    if g.is_zero():
        raise ValueError("multiplicity of the zero polynomial")
    return g.order()


def is_squarefree(f: Poly2) -> bool:
    """True iff ``gcd(f, f_x, f_y)`` is a constant."""
    import sympy

    x, y = sympy.symbols("x y")

    def to_sympy(p: Poly2):
        return sympy.Poly(
            {(i, j): sympy.Rational(v.numerator, v.denominator) for (i, j), v in p.items()},
            x,
            y,
            domain="QQ",
        )

    fs = to_sympy(f)
    g = fs.gcd(to_sympy(f.diff(0))) if f.diff(0) else fs
    dy = f.diff(1)
    if dy:
        g = g.gcd(to_sympy(dy))
    return g.total_degree() <= 0


# univariate helpers over Q -------------------------------------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def upoly(d: Mapping[int, Fraction]) -> list[Fraction]:
    """Dense ascending coefficient list from ``{exponent: coefficient}``."""
    if not d:
        return []
    out = [Fraction(0)] * (max(d) + 1)
    for k, v in d.items():
        out[k] = Fraction(v)
    return _trim(out)


def udivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = c
        for i, bv in enumerate(b):
            a[s + i] -= c * bv
        _trim(a)
    return _trim(q), a


def ugcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def uderiv(a: list[Fraction]) -> list[Fraction]:
    return _trim([a[i] * i for i in range(1, len(a))])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(a: list[Fraction]) -> tuple[list[tuple[Fraction, int]], list[Fraction]]:
    """Split ``a`` into rational roots (with multiplicity) and a root-free cofactor.

    Returns ``([(root, multiplicity), ...], cofactor)`` where the cofactor has
    no rational roots.
    """
    a = _trim(list(a))
    if not a:
        raise ValueError("roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    zero_mult = 0
    while a and not a[0]:
        a = a[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    while len(a) > 1:
        den = 1
        for c in a:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in a]
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if not sum(c * r**i for i, c in enumerate(a)):
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        m = 0
        while True:
            quo, rem = udivmod(a, [-found, Fraction(1)])
            if rem:
                break
            a = quo
            m += 1
        roots.append((found, m))
    return roots, a


def squarefree_decomposition(a: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: ``a = c * prod(f_i ** i)`` with squarefree, coprime ``f_i``."""
    a = _trim(list(a))
    if len(a) <= 1:
        return []
    out = []
    b = ugcd(a, uderiv(a))
    c = udivmod(a, b)[0] if len(b) > 1 else a
    d = udivmod(uderiv(a), b)[0] if len(b) > 1 else uderiv(a)
    i = 1
    while len(c) > 1:
        e = _trim([x - y for x, y in _zip_longest(d, uderiv(c))])
        g = ugcd(c, e) if e else c
        if len(g) > 1:
            out.append((g, i))
        c = udivmod(c, g)[0]
        d = udivmod(e, g)[0] if e else []
        i += 1
    return out


def _zip_longest(a: Iterable[Fraction], b: Iterable[Fraction]):
    a, b = list(a), list(b)
    n = max(len(a), len(b))
    a += [Fraction(0)] * (n - len(a))
    b += [Fraction(0)] * (n - len(b))
    return zip(a, b)
