"""Command-line front end.

Exit status: 0 success, 1 computation error, 2 usage or parse error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings

from . import resfile
from .errors import CurvzetaError, UsageError
from .jets import verify
from .parsing import parse_curve
from .report import (
    document,
    error_document,
    hilb_record,
    hilb_text,
    rational_record,
    resolution_record,
    resolution_text,
    series_record,
    series_text,
    verify_record,
    verify_text,
)
from .resolution import resolve
from .ring import expand_series
from .zeta import denef_zeta, hilb_recursion, q_series_closed

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def _k_max(text: str) -> int:
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError("K must be at least 2")
    return v


def _primes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        try:
            p = int(part)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{part!r} is not an integer") from None
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
        out.append(p)
    return out


def _specialization(text: str) -> str:
    if text in ("euler", "weight"):
        return text
    if text.startswith("q="):
        try:
            int(text[2:])
            return text
        except ValueError:
            pass
    raise argparse.ArgumentTypeError("expected euler, weight or q=<int>")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curvzeta", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, resolution_file: bool = True):
        if resolution_file:
            p.add_argument("curve", nargs="?", help='curve polynomial, e.g. "y^2 - x^3"')
            p.add_argument("--resolution", metavar="FILE", help="read resolution data from FILE")
        else:
            p.add_argument("curve", help='curve polynomial, e.g. "y^2 - x^3"')
        p.add_argument("--json", action="store_true", help="emit one JSON document")

    p = sub.add_parser("resolve", help="embedded resolution: divisor table and dual graph")
    common(p, resolution_file=False)
    p.add_argument("--write", metavar="FILE", help="also save the resolution file")

    p = sub.add_parser("zeta", help="curvilinear Igusa zeta function")
    common(p)

    p = sub.add_parser("hilb", help="classes of curvilinear Hilbert schemes")
    common(p)
    p.add_argument("--max-k", type=_k_max, required=True, metavar="K")
    p.add_argument("--specialize", type=_specialization, metavar="euler|weight|q=<int>")

    p = sub.add_parser("qseries", help="closed form and expansion of Q(T)")
    common(p)
    p.add_argument("--order", type=_positive, default=8, metavar="K")
    p.add_argument(
        "--verbatim-constant",
        action="store_true",
        help="use the uncorrected first term of the zeta/series identity (for comparison only)",
    )

    p = sub.add_parser("verify", help="check classes against jet counts over F_p")
    common(p, resolution_file=False)
    p.add_argument("--primes", type=_primes, required=True, metavar="P,...")
    p.add_argument("--max-k", type=_k_max, required=True, metavar="K")
    p.add_argument("--jobs", type=_positive, default=1, metavar="J")
    return parser


def _load_resolution(args):
    if getattr(args, "resolution", None):
        if args.curve:
            raise UsageError("give either a curve or --resolution, not both")
        return None, resfile.load(args.resolution)
    if not args.curve:
        raise UsageError("a curve or --resolution FILE is required")
    f = parse_curve(args.curve)
    return f, resolve(f)


def _run(args) -> tuple[dict, str, int]:
    try:
        f, res = _load_resolution(args)
    except OSError as exc:
        raise UsageError(f"cannot read resolution file: {exc}") from None
    inputs = {"curve": args.curve, "resolution_file": getattr(args, "resolution", None)}

    if args.command == "resolve":
        rec = resolution_record(res)
        if args.write:
            resfile.dump(res, args.write)
        return document("resolve", input=inputs, resolution=rec), resolution_text(rec), EXIT_OK

    if args.command == "zeta":
        rec = rational_record(denef_zeta(res))
        return document("zeta", input=inputs, zeta=rec), rec["text"], EXIT_OK

    if args.command == "hilb":
        rec = hilb_record(hilb_recursion(res, args.max_k), args.specialize)
        return document("hilb", input=inputs, hilb=rec), hilb_text(rec), EXIT_OK

    if args.command == "qseries":
        closed = q_series_closed(res, verbatim=args.verbatim_constant)
        rec = series_record(closed, expand_series(closed, args.order))
        return document("qseries", input=inputs, qseries=rec), series_text(rec), EXIT_OK

    if args.command == "verify":
        table = hilb_recursion(res, args.max_k)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            reports = verify(f, table, args.primes, args.max_k, jobs=args.jobs)
        rec = verify_record(reports)
        doc = document("verify", input=inputs, hilb=hilb_record(table), verify=rec)
        status = EXIT_OK if rec["all_match"] else EXIT_MISMATCH
        if status != EXIT_OK:
            doc["ok"] = False
        return doc, verify_text(rec), status

    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    want_json = "--json" in argv
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        doc, text, status = _run(args)
    except CurvzetaError as exc:
        if want_json:
            print(json.dumps(error_document(command, exc.code, str(exc)), indent=2))
        else:
            print(f"curvzeta: error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status
    print(json.dumps(doc, indent=2) if want_json else text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
