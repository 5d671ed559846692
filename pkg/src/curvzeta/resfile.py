"""Line-oriented resolution files.

Example (the cusp ``y^2 - x^3``)::

    # curvzeta resolution
    ambient_dim 2
    origin_mult 2
    divisor id=1 N=2 nu=1 m=1 neighbors=3
    divisor id=2 N=3 nu=2 m=1 neighbors=3
    divisor id=3 N=6 nu=4 m=2 neighbors=1,2 strict_meets=1

Header lines are ``<key> <value>``: ``ambient_dim`` (required),
``origin_mult`` and ``H2`` (a class such as ``"L^2 + L + 1"``; required
when ``ambient_dim > 2``).  Each ``divisor`` line holds ``key=value``
fields: ``id``, ``N``, ``nu``, ``m`` (required), ``neighbors`` (comma
separated ids), ``strict_meets``, and the classes ``class_open`` and
``class_strict``.  The class fields are required for divisors of order 1
when ``ambient_dim > 2``.  Values with spaces are quoted shell-style.
Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import shlex
from pathlib import Path

from .errors import ParseError, ResolutionFileError
from .parsing import parse_laurent
from .resolution import Divisor, ResolutionData, class_open, class_strict

_DIVISOR_KEYS = {"id", "N", "nu", "m", "neighbors", "strict_meets", "class_open", "class_strict"}


def _int(value: str, what: str, lineno: int, minimum: int = 1) -> int:
    try:
        v = int(value)
    except ValueError:
        raise ResolutionFileError(f"line {lineno}: {what} must be an integer, got {value!r}") from None
    if v < minimum:
        raise ResolutionFileError(f"line {lineno}: {what} must be >= {minimum}, got {v}")
    return v


def _class(value: str, what: str, lineno: int):
    try:
        return parse_laurent(value)
    except ParseError as exc:
        raise ResolutionFileError(f"line {lineno}: bad {what} {value!r}: {exc}") from None


def loads(text: str) -> ResolutionData:
    header: dict[str, str] = {}
    rows: list[tuple[int, dict[str, str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            words = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ResolutionFileError(f"line {lineno}: {exc}") from None
        if not words:
            continue
        key, rest = words[0], words[1:]
        if key == "divisor":
            fields = {}
            for w in rest:
                k, sep, v = w.partition("=")
                if not sep or k not in _DIVISOR_KEYS:
                    raise ResolutionFileError(f"line {lineno}: unexpected field {w!r}")
                if k in fields:
                    raise ResolutionFileError(f"line {lineno}: duplicate field {k!r}")
                fields[k] = v
            missing = {"id", "N", "nu", "m"} - fields.keys()
            if missing:
                raise ResolutionFileError(f"line {lineno}: missing {', '.join(sorted(missing))}")
            rows.append((lineno, fields))
        elif key in ("ambient_dim", "origin_mult", "H2"):
            if len(rest) != 1:
                raise ResolutionFileError(f"line {lineno}: {key} takes exactly one value")
            if key in header:
                raise ResolutionFileError(f"line {lineno}: duplicate {key}")
            header[key] = rest[0]
        else:
            raise ResolutionFileError(f"line {lineno}: unknown record {key!r}")

    if "ambient_dim" not in header:
        raise ResolutionFileError("missing ambient_dim")
    n = _int(header["ambient_dim"], "ambient_dim", 0, minimum=2)
    origin_mult = _int(header["origin_mult"], "origin_mult", 0) if "origin_mult" in header else None
    h2 = _class(header["H2"], "H2", 0) if "H2" in header else None
    if n > 2 and h2 is None:
        raise ResolutionFileError(f"H2 is required when ambient_dim = {n}")
    if n == 2 and h2 is None and origin_mult is None:
        raise ResolutionFileError("one of origin_mult or H2 is required")

    divisors = []
    for lineno, fields in rows:
        nbrs = frozenset(
            _int(x, "neighbor id", lineno, minimum=0)
            for x in fields.get("neighbors", "").split(",")
            if x.strip()
        )
        try:
            d = Divisor(
                id=_int(fields["id"], "id", lineno, minimum=0),
                N=_int(fields["N"], "N", lineno),
                nu=_int(fields["nu"], "nu", lineno),
                m=_int(fields["m"], "m", lineno),
                neighbors=nbrs,
                strict_meets=_int(fields.get("strict_meets", "0"), "strict_meets", lineno, minimum=0),
                open_class=_class(fields["class_open"], "class_open", lineno)
                if "class_open" in fields
                else None,
                strict_class=_class(fields["class_strict"], "class_strict", lineno)
                if "class_strict" in fields
                else None,
            )
        except ValueError as exc:
            raise ResolutionFileError(f"line {lineno}: {exc}") from None
        divisors.append(d)

    try:
        return ResolutionData(n, tuple(divisors), origin_mult, h2)
    except ValueError as exc:
        raise ResolutionFileError(str(exc)) from None


def load(path: str | Path) -> ResolutionData:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(res: ResolutionData, *, with_classes: bool = False) -> str:
    """Serialize ``res``; ``with_classes`` writes the derived divisor classes too."""
    lines = ["# curvzeta resolution", f"ambient_dim {res.ambient_dim}"]
    if res.origin_mult is not None:
        lines.append(f"origin_mult {res.origin_mult}")
    if res.h2 is not None:
        lines.append(f"H2 {shlex.quote(str(res.h2))}")
    for d in res.divisors:
        parts = [f"id={d.id}", f"N={d.N}", f"nu={d.nu}", f"m={d.m}"]
        if d.neighbors:
            parts.append("neighbors=" + ",".join(str(i) for i in sorted(d.neighbors)))
        if d.strict_meets:
            parts.append(f"strict_meets={d.strict_meets}")
        open_cls = d.open_class
        strict_cls = d.strict_class
        if with_classes and res.ambient_dim == 2:
            open_cls = class_open(res, d.id)
            strict_cls = class_strict(res, d.id)
        if open_cls is not None:
            parts.append("class_open=" + shlex.quote(str(open_cls)))
        if strict_cls is not None:
            parts.append("class_strict=" + shlex.quote(str(strict_cls)))
        lines.append("divisor " + " ".join(parts))
    return "\n".join(lines) + "\n"


def dump(res: ResolutionData, path: str | Path, **kwargs) -> None:
    Path(path).write_text(dumps(res, **kwargs), encoding="utf-8")
