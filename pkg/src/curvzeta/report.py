"""Structured records for the JSON report and the plain-text tables.

Both renderings are built from the same records so the numbers agree.
"""

from __future__ import annotations

import json
from importlib import resources

from . import __version__
from .jets import JetCountReport
from .resolution import ResolutionData, class_open, class_strict
from .ring import FactoredRational, LaurentPoly, SeriesT
from .zeta import HilbTable

SCHEMA_RESOURCE = "schema/report.schema.json"


def load_schema() -> dict:
    return json.loads(resources.files("curvzeta").joinpath(SCHEMA_RESOURCE).read_text("utf-8"))


def document(command: str, **sections) -> dict:
    doc = {"tool": "curvzeta", "version": __version__, "command": command, "ok": True}
    doc.update({k: v for k, v in sections.items() if v is not None})
    return doc


def error_document(command: str | None, code: str, message: str) -> dict:
    return {
        "tool": "curvzeta",
        "version": __version__,
        "command": command,
        "ok": False,
        "error": {"code": code, "message": message},
    }


# records --------------------------------------------------------------------

def resolution_record(res: ResolutionData) -> dict:
    divisors = []
    for d in res.divisors:
        rec = {
            "id": d.id,
            "N": d.N,
            "nu": d.nu,
            "m": d.m,
            "neighbors": sorted(d.neighbors),
            "strict_meets": d.strict_meets,
        }
        if res.ambient_dim == 2 or d.open_class is not None:
            rec["class_open"] = str(class_open(res, d.id))
        rec["class_strict"] = str(class_strict(res, d.id))
        divisors.append(rec)
    return {
        "ambient_dim": res.ambient_dim,
        "origin_mult": res.origin_mult,
        "divisors": divisors,
        "edges": [list(e) for e in res.edges()],
    }


def rational_record(r: FactoredRational) -> dict:
    return {
        "text": str(r),
        "numerator": str(r.numerator),
        "denominator": [{"factor": str(f), "multiplicity": m} for f, m in r.denominator],
    }


def _specialized(c: LaurentPoly, mode: str | None):
    if mode is None:
        return None
    if mode == "euler":
        return c.euler()
    if mode == "weight":
        return c.weight().to_str("t")
    return c.point_count(int(mode.removeprefix("q=")))


def hilb_record(table: HilbTable, specialize: str | None = None) -> dict:
    rows = []
    for k, c in table.items():
        row = {"k": k, "class": str(c)}
        if specialize is not None:
            row["specialized"] = _specialized(c, specialize)
        rows.append(row)
    rec = {"k_max": table.k_max, "threshold": table.threshold, "classes": rows}
    if specialize is not None:
        rec["specialization"] = specialize
    return rec


def series_record(closed: FactoredRational, series: SeriesT) -> dict:
    return {
        "closed_form": rational_record(closed),
        "order": series.order,
        "coefficients": [{"k": k, "class": str(c)} for k, c in enumerate(series)],
    }


def verify_record(reports: list[JetCountReport]) -> dict:
    return {
        "reports": [r.as_dict() for r in reports],
        "all_match": all(r.match for r in reports),
    }


# text -----------------------------------------------------------------------

def _table(header: list[str], rows: list[list[object]]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def resolution_text(rec: dict) -> str:
    rows = [
        [f"E{d['id']}", d["N"], d["nu"], d["m"], d.get("class_open", "-"), d["strict_meets"],
         ",".join(f"E{n}" for n in d["neighbors"]) or "-"]
        for d in rec["divisors"]
    ]
    out = [
        f"origin multiplicity: {rec['origin_mult']}",
        _table(["divisor", "N", "nu", "m", "class_open", "strict_meets", "neighbors"], rows),
        "edges: " + (", ".join(f"E{a}-E{b}" for a, b in rec["edges"]) or "none"),
    ]
    meets = [f"E{d['id']}" for d in rec["divisors"] if d["strict_meets"]]
    out.append("strict transform meets: " + (", ".join(meets) or "none"))
    return "\n".join(out)


def hilb_text(rec: dict) -> str:
    header = ["k", "H_k"]
    mode = rec.get("specialization")
    if mode is not None:
        header.append(mode)
    rows = []
    for row in rec["classes"]:
        r = [row["k"], row["class"]]
        if mode is not None:
            r.append(row["specialized"])
        rows.append(r)
    thr = rec["threshold"]
    return _table(header, rows) + f"\nthreshold: {thr if thr is not None else 'none'}"


def series_text(rec: dict) -> str:
    coeffs = [[row["k"], row["class"]] for row in rec["coefficients"]]
    return "\n".join([
        "Q(T) = " + rec["closed_form"]["text"],
        f"expansion to T^{rec['order']}:",
        _table(["k", "coefficient"], coeffs),
    ])


def verify_text(rec: dict) -> str:
    rows = [
        [r["prime"], r["k"], r["raw_count"], r["predicted"], "ok" if r["match"] else "MISMATCH"]
        for r in rec["reports"]
    ]
    n_ok = sum(r["match"] for r in rec["reports"])
    return _table(["p", "k", "raw_count", "predicted", "match"], rows) + (
        f"\n{n_ok}/{len(rows)} rows match"
    )
