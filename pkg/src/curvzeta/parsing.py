"""Recursive-descent parsers for curve polynomials and motivic expressions.

Curve grammar (variables ``x``, ``y``; exact rational coefficients)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := atom ('*'? atom)*
    atom   := (coeff | 'x' | 'y' | '(' expr ')') ['^' posint]
    coeff  := int ['/' int]

Motivic grammar (``L`` and ``T``), a superset of the canonical rendering of
:mod:`curvzeta.ring`, e.g. ``3*L^2 - L + 1 + 2*L^-1*T^3`` or
``(L - 1)*T / (L^2*(L - T))``::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' | '/')? factor)*
    factor := (int | 'L' | 'T' | '(' expr ')') ['^' ['-'] int]
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

from .curve import CurvePoly, Poly2
from .errors import ParseError, ZeroConstantViolation
from .ring import BiPoly, FactoredRational, LaurentPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")  # one-letter names: "xy" is x*y


class _Tokens:
    def __init__(self, text: str, names: set[str]):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            start = m.start(m.lastindex)
            num, name, sym = m.groups()
            if num is not None:
                self.toks.append(("num", num, start))
            elif name is not None:
                if name not in names:
                    self.fail(f"unknown symbol {name!r}", start)
                self.toks.append(("var", name, start))
            else:
                if sym not in "+-*/^()":
                    self.fail(f"unexpected character {sym!r}", start)
                self.toks.append(("sym", sym, start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def fail(self, msg: str, char_pos: int):
        raise ParseError(msg, len(self.text[:char_pos].encode("utf-8")), self.text)

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, sym: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "sym" and val == sym:
            self.i += 1
            return True
        return False

    def expect(self, sym: str):
        if not self.accept(sym):
            kind, val, pos = self.peek()
            self.fail(f"expected {sym!r}, found {val or 'end of input'!r}", pos)

    def integer(self, what: str) -> int:
        kind, val, pos = self.next()
        if kind != "num":
            self.fail(f"expected {what}, found {val or 'end of input'!r}", pos)
        return int(val)

    def starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("num", "var") or (kind == "sym" and val == "(")

    def finish(self):
        kind, val, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {val!r}", pos)


# curves -------------------------------------------------------------------

_X = Poly2({(1, 0): 1})
_Y = Poly2({(0, 1): 1})


def _curve_expr(tk: _Tokens) -> Poly2:
    neg = False
    if tk.accept("-"):
        neg = True
    else:
        tk.accept("+")
    acc = _curve_term(tk)
    if neg:
        acc = -acc
    while True:
        if tk.accept("+"):
            acc = acc + _curve_term(tk)
        elif tk.accept("-"):
            acc = acc - _curve_term(tk)
        else:
            return acc


def _curve_term(tk: _Tokens) -> Poly2:
    acc = _curve_atom(tk)
    while True:
        if tk.accept("*"):
            acc = acc * _curve_atom(tk)
        elif tk.starts_atom():
            acc = acc * _curve_atom(tk)
        else:
            return acc


def _curve_atom(tk: _Tokens) -> Poly2:
    kind, val, pos = tk.peek()
    if kind == "num":
        tk.next()
        value = Fraction(int(val))
        if tk.accept("/"):
            den = tk.integer("denominator")
            if den == 0:
                tk.fail("zero denominator", pos)
            value /= den
        base = Poly2({(0, 0): value})
    elif kind == "var":
        tk.next()
        base = _X if val == "x" else _Y
    elif tk.accept("("):
        base = _curve_expr(tk)
        tk.expect(")")
    else:
        tk.fail(f"expected a coefficient, x, y or '(', found {val or 'end of input'!r}", pos)
    if tk.accept("^"):
        _, _, epos = tk.peek()
        e = tk.integer("exponent")
        if e < 1:
            tk.fail("exponent must be a positive integer", epos)
        base = base**e
    return base


def parse_poly2(text: str) -> Poly2:
    tk = _Tokens(text, {"x", "y"})
    p = _curve_expr(tk)
    tk.finish()
    return p


def parse_curve(text: str) -> CurvePoly:
    """Parse a curve polynomial such as ``"y^2 - x^3"``."""
    p = parse_poly2(text)
    if p.is_zero():
        raise ParseError("the zero polynomial does not define a curve", 0, text)
    if p.constant_term():
        raise ZeroConstantViolation(f"f(0,0) = {p.constant_term()} != 0 for {text!r}")
    return CurvePoly(p)


def render_curve(f: Poly2) -> str:
    return f.to_str(("x", "y"))


# motivic expressions ------------------------------------------------------

_ATOMS: dict[str, Callable[[], FactoredRational]] = {
    "L": lambda: FactoredRational(BiPoly.monomial(1, 0)),
    "T": lambda: FactoredRational(BiPoly.monomial(0, 1)),
}


def _mot_expr(tk: _Tokens) -> FactoredRational:
    neg = False
    if tk.accept("-"):
        neg = True
    else:
        tk.accept("+")
    acc = _mot_term(tk)
    if neg:
        acc = -acc
    while True:
        if tk.accept("+"):
            acc = acc + _mot_term(tk)
        elif tk.accept("-"):
            acc = acc - _mot_term(tk)
        else:
            return acc


def _mot_term(tk: _Tokens) -> FactoredRational:
    acc = _mot_factor(tk)
    while True:
        if tk.accept("*") or tk.starts_atom():
            acc = acc * _mot_factor(tk)
        elif tk.accept("/"):
            _, _, pos = tk.peek()
            den = _mot_factor(tk)
            if den.is_zero():
                tk.fail("division by zero", pos)
            acc = acc / den
        else:
            return acc


def _mot_factor(tk: _Tokens) -> FactoredRational:
    kind, val, pos = tk.peek()
    if kind == "num":
        tk.next()
        base = FactoredRational(int(val))
    elif kind == "var":
        tk.next()
        base = _ATOMS[val]()
    elif tk.accept("("):
        base = _mot_expr(tk)
        tk.expect(")")
    else:
        tk.fail(f"expected a number, L, T or '(', found {val or 'end of input'!r}", pos)
    if tk.accept("^"):
        sign = -1 if tk.accept("-") else 1
        e = sign * tk.integer("exponent")
        if e < 0 and base.is_zero():
            tk.fail("negative power of zero", pos)
        base = base**e
    return base


def parse_rational(text: str) -> FactoredRational:
    tk = _Tokens(text, {"L", "T"})
    r = _mot_expr(tk)
    tk.finish()
    return r


def parse_bipoly(text: str) -> BiPoly:
    r = parse_rational(text)
    if not r.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial in L^+-1 and T", 0, text)
    return r.numerator


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a class such as ``"L^2 - 2*L + 1"`` or ``"L^-1"``."""
    b = parse_bipoly(text)
    if not b.is_laurent():
        raise ParseError(f"{text!r} involves T", 0, text)
    return b.to_laurent()
