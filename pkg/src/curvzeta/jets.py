"""Brute-force point counts of smooth punctual jets over prime fields.

A smooth punctual ``k``-jet on ``C = {f = 0}`` is a pair
``(phi_1, phi_2)`` in ``(F_p[t]/(t^k))^2`` with zero constant terms, linear
coefficients not both zero, and ``f(phi_1, phi_2) = 0 mod t^k``.  Their
number ``h_k(p)`` relates to the Hilbert-scheme class by

    h_k(p) = H_k(p) * (p - 1) * p^(k-2).

Candidates are grown one coefficient pair at a time.  The coefficient of
``t^d`` in ``f(phi)`` only involves coefficients of index ``<= d``, so a
prefix is dropped as soon as it fails at its own depth.
"""

from __future__ import annotations

import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .curve import CurvePoly
from .errors import BadReduction, BudgetExceeded, VerificationMismatch
from .ring import LaurentPoly
from .zeta import HilbTable

log = logging.getLogger(__name__)

BUDGET_ENV = "CURVZETA_JET_BUDGET"
DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class JetCountReport:
    prime: int
    k: int
    raw_count: int
    predicted: int
    match: bool

    def as_dict(self) -> dict:
        return asdict(self)


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"{BUDGET_ENV}={raw!r} is not a number") from None


def _reduce(f: CurvePoly, p: int) -> list[tuple[int, int, int]]:
    bad = [d for d in f.denominators() if d % p == 0]
    if bad:
        raise BadReduction(f"p = {p} divides the coefficient denominator {bad[0]}")
    return [(i, j, c) for (i, j), c in f.reduce_mod(p).items()]


def _mul_trunc(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Row-wise product of truncated series (columns are t-degrees), mod p."""
    n = a.shape[1]
    out = np.zeros_like(a)
    for r in range(n):
        if not a[:, r].any():
            continue
        out[:, r:] += a[:, r : r + 1] * b[:, : n - r]
    return out % p


def _coefficient(terms, phi1: np.ndarray, phi2: np.ndarray, d: int, p: int) -> np.ndarray:
    """Coefficient of ``t^d`` in ``f(phi1, phi2)`` for every row."""
    a, b = phi1[:, : d + 1], phi2[:, : d + 1]
    max_i = max(i for i, _, _ in terms)
    max_j = max(j for _, j, _ in terms)
    one = np.zeros_like(a)
    one[:, 0] = 1
    pa, pb = [one], [one]
    for _ in range(max_i):
        pa.append(_mul_trunc(pa[-1], a, p))
    for _ in range(max_j):
        pb.append(_mul_trunc(pb[-1], b, p))
    acc = np.zeros(a.shape[0], dtype=np.int64)
    for i, j, c in terms:
        prod = _mul_trunc(pa[i], pb[j], p)
        acc = (acc + c * prod[:, d]) % p
    return acc


def _count_branch(terms, p: int, k_max: int, a1: int, b1: int) -> list[int]:
    """Counts ``[h_2, ..., h_kmax]`` restricted to jets with linear part ``(a1, b1)``."""
    phi1 = np.zeros((1, k_max), dtype=np.int64)
    phi2 = np.zeros((1, k_max), dtype=np.int64)
    phi1[0, 1], phi2[0, 1] = a1, b1
    counts = []
    grid_a, grid_b = np.divmod(np.arange(p * p, dtype=np.int64), p)
    for d in range(1, k_max):
        if d > 1:
            rows = phi1.shape[0]
            phi1 = np.repeat(phi1, p * p, axis=0)
            phi2 = np.repeat(phi2, p * p, axis=0)
            phi1[:, d] = np.tile(grid_a, rows)
            phi2[:, d] = np.tile(grid_b, rows)
        keep = _coefficient(terms, phi1, phi2, d, p) == 0
        phi1, phi2 = phi1[keep], phi2[keep]
        # rows now satisfy f(phi) = 0 mod t^(d+1): these are the (d+1)-jets
        counts.append(int(phi1.shape[0]))
        if not counts[-1]:
            counts.extend([0] * (k_max - 1 - d))
            break
    return counts


def _branch_task(args):
    return _count_branch(*args)


def count_smooth_jets_upto(
    f: CurvePoly, p: int, k_max: int, *, jobs: int = 1, budget: int | None = None
) -> dict[int, int]:
    """``{k: h_k(p)}`` for ``2 <= k <= k_max`` from a single enumeration."""
    if k_max < 2:
        raise ValueError("k must be at least 2")
    budget = enumeration_budget() if budget is None else budget
    candidates = p ** (2 * (k_max - 1))
    if candidates > budget:
        raise BudgetExceeded(
            f"p^(2(k-1)) = {candidates} candidates at p={p}, k={k_max} exceeds the budget {budget}"
        )
    terms = _reduce(f, p)
    if not terms:
        raise BadReduction(f"f vanishes identically mod {p}")
    tasks = [(terms, p, k_max, a1, b1) for a1 in range(p) for b1 in range(p) if a1 or b1]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_branch_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        parts = [_branch_task(t) for t in tasks]
    totals = [sum(col) for col in zip(*parts)]
    return {k: totals[k - 2] for k in range(2, k_max + 1)}


def count_smooth_jets(
    f: CurvePoly, p: int, k: int, *, jobs: int = 1, budget: int | None = None
) -> int:
    return count_smooth_jets_upto(f, p, k, jobs=jobs, budget=budget)[k]


def predicted_count(h: LaurentPoly, p: int, k: int) -> int:
    return h.point_count(p) * (p - 1) * p ** (k - 2)


def verify(
    f: CurvePoly,
    table: HilbTable,
    primes,
    k_max: int,
    *,
    jobs: int = 1,
    budget: int | None = None,
    strict: bool = False,
) -> list[JetCountReport]:
    """Compare jet counts with the point-count specialization of ``table``.

    A class that disagrees at some primes only triggers a warning (bad
    reduction is possible).  With ``strict=True`` a disagreement at every
    prime raises :class:`VerificationMismatch`.
    """
    if k_max > table.k_max:
        raise ValueError(f"table only reaches k = {table.k_max}")
    primes = list(primes)
    reports: list[JetCountReport] = []
    for p in primes:
        counts = count_smooth_jets_upto(f, p, k_max, jobs=jobs, budget=budget)
        for k in range(2, k_max + 1):
            pred = predicted_count(table[k], p, k)
            reports.append(JetCountReport(p, k, counts[k], pred, counts[k] == pred))
            log.debug("p=%d k=%d raw=%d predicted=%d", p, k, counts[k], pred)

    for k in range(2, k_max + 1):
        bad = [r.prime for r in reports if r.k == k and not r.match]
        if not bad:
            continue
        if len(bad) == len(primes):
            msg = f"H_{k} = {table[k]} disagrees with jet counts at every prime {bad}"
            if strict:
                raise VerificationMismatch(msg)
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
        else:
            warnings.warn(
                f"H_{k} = {table[k]} disagrees with jet counts at p in {bad} "
                "(possibly bad reduction)",
                RuntimeWarning,
                stacklevel=2,
            )
    return reports
