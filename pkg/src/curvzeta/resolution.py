"""Embedded resolution of plane curve germs by iterated point blowups.

Each point still to be examined is kept in local coordinates ``(u, v)``
centred at that point.  Exceptional divisors through it are coordinate axes
(``{u=0}`` and/or ``{v=0}``).  Blowing up the origin uses the two charts

    A: (u, v) = (u1, u1*v1),   exceptional divisor {u1 = 0}
    B: (u, v) = (u2*v2, v2),   exceptional divisor {v2 = 0}

Chart B is only needed for the single direction ``[0:1]`` that chart A
misses (its "point at infinity").
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .curve import (
    CurvePoly,
    Poly2,
    is_squarefree,
    rational_roots,
    squarefree_decomposition,
    upoly,
)
from .errors import IrrationalCenter, NonReducedInput, UnknownDivisor
from .ring import L, LaurentPoly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Divisor:
    """One exceptional divisor ``E_i`` and its decorations.

    ``N``, ``nu`` and ``m`` are the vanishing orders along ``E_i`` of the curve,
    the relative canonical divisor and the maximal ideal of the origin.
    ``open_class`` / ``strict_class`` override the classes computed from the
    dual graph; they are how hand-written resolution files (any ambient
    dimension) supply ``[(E_i minus strict)^o]`` and ``[(E_i meet strict)^o]``.
    """

    id: int
    N: int
    nu: int
    m: int
    neighbors: frozenset[int] = frozenset()
    strict_meets: int = 0
    open_class: LaurentPoly | None = None
    strict_class: LaurentPoly | None = None

    def __post_init__(self):
        if min(self.N, self.nu, self.m) < 1:
            raise ValueError(f"divisor {self.id}: N, nu, m must be positive")
        if self.id in self.neighbors:
            raise ValueError(f"divisor {self.id} cannot neighbor itself")
        if self.strict_meets < 0:
            raise ValueError(f"divisor {self.id}: negative strict_meets")


@dataclass(frozen=True)
class BlowupStep:
    """Audit record for one point blowup."""

    new_id: int
    through: tuple[int, ...]
    center_mult: int
    N: int
    nu: int
    m: int


@dataclass(frozen=True)
class StrictPoint:
    """A final transversal meeting of the strict transform with a divisor.

    ``local`` is the strict transform in coordinates centred at the point and
    ``axis`` tells which coordinate line (``"u"`` or ``"v"``) is the divisor.
    ``degree`` > 1 marks a closed point with irrational coordinates, for which
    no local equation is kept.
    """

    divisor: int
    axis: str
    local: Poly2 | None
    degree: int = 1


@dataclass(frozen=True)
class ResolutionData:
    ambient_dim: int
    divisors: tuple[Divisor, ...]
    origin_mult: int | None
    h2: LaurentPoly | None = None
    history: tuple[BlowupStep, ...] = field(default=(), compare=False)
    strict_points: tuple[StrictPoint, ...] = field(default=(), compare=False)

    def __post_init__(self):
        ids = [d.id for d in self.divisors]
        if len(set(ids)) != len(ids):
            raise ValueError("divisor ids must be unique")
        by_id = {d.id: d for d in self.divisors}
        for d in self.divisors:
            for n in d.neighbors:
                if n not in by_id:
                    raise ValueError(f"divisor {d.id} neighbors unknown divisor {n}")
                if d.id not in by_id[n].neighbors:
                    raise ValueError(f"adjacency {d.id}-{n} is not symmetric")
        if self.origin_mult is not None and self.origin_mult < 1:
            raise ValueError("origin multiplicity must be positive")

    def divisor(self, i: int) -> Divisor:
        for d in self.divisors:
            if d.id == i:
                return d
        raise UnknownDivisor(f"no divisor with id {i}")

    @property
    def ids(self) -> list[int]:
        return [d.id for d in self.divisors]

    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(d.id, n), max(d.id, n)) for d in self.divisors for n in d.neighbors})


@dataclass
class _Point:
    g: Poly2
    axes: dict[str, int]  # "u" / "v" -> divisor id whose equation is that coordinate


class _Resolver:
    def __init__(self, f: CurvePoly):
        self.f = f
        self.deco: dict[int, tuple[int, int, int]] = {}
        self.edges: set[frozenset[int]] = set()
        self.strict_meets: dict[int, int] = {}
        self.history: list[BlowupStep] = []
        self.strict_points: list[StrictPoint] = []
        self.queue: deque[_Point] = deque()

    def run(self) -> ResolutionData:
        self.queue.append(_Point(Poly2(self.f.coeffs), {}))
        while self.queue:
            self._blow_up(self.queue.popleft())
        divisors = []
        for i, (N, nu, m) in sorted(self.deco.items()):
            nbrs = frozenset(j for e in self.edges if i in e for j in e if j != i)
            divisors.append(Divisor(i, N, nu, m, nbrs, self.strict_meets.get(i, 0)))
        return ResolutionData(
            ambient_dim=2,
            divisors=tuple(divisors),
            origin_mult=self.f.order(),
            history=tuple(self.history),
            strict_points=tuple(self.strict_points),
        )

    def _blow_up(self, pt: _Point) -> None:
        g, axes = pt.g, pt.axes
        e = g.order()
        through = tuple(sorted(axes.values()))
        if through:
            N = sum(self.deco[j][0] for j in through) + e
            nu = sum(self.deco[j][1] for j in through) + 1
            m = sum(self.deco[j][2] for j in through)
        else:
            N, nu, m = e, 1, 1
        new = len(self.deco) + 1
        self.deco[new] = (N, nu, m)
        self.strict_meets[new] = 0
        self.history.append(BlowupStep(new, through, e, N, nu, m))
        log.debug("blowup E%d through %s: mult %d -> (N, nu, m) = %s", new, through, e, (N, nu, m))

        if len(through) == 2:
            self.edges.discard(frozenset(through))
        for j in through:
            self.edges.add(frozenset((j, new)))

        cone = g.homogeneous_part(e)
        # chart A: u^i v^j -> u1^(i+j-e) v1^j
        chart_a = Poly2({(i + j - e, j): c for (i, j), c in g.items()})
        affine = upoly(cone.restrict(0, 1))  # cone(1, t)
        roots, rest = rational_roots(affine) if affine else ([], [])
        for t, mult in roots:
            on_old = t == 0 and "v" in axes
            new_axes = {"u": new}
            if on_old:
                new_axes["v"] = axes["v"]
            local = chart_a.translate(0, t)
            self._handle(local, new_axes, mult, on_old, new, "u")
        for factor, mult in squarefree_decomposition(rest):
            deg = len(factor) - 1
            if mult > 1:
                raise IrrationalCenter(
                    f"E{new} meets the strict transform with multiplicity {mult} "
                    f"at irrational points (factor of degree {deg}); centers must be rational"
                )
            self.strict_meets[new] += deg
            self.strict_points.append(StrictPoint(new, "u", None, deg))

        inf_mult = cone.max_power_dividing(0)
        if inf_mult:
            # chart B: u^i v^j -> u2^i v2^(i+j-e)
            chart_b = Poly2({(i, i + j - e): c for (i, j), c in g.items()})
            on_old = "u" in axes
            new_axes = {"v": new}
            if on_old:
                new_axes["u"] = axes["u"]
            self._handle(chart_b, new_axes, inf_mult, on_old, new, "v")

    def _handle(self, local: Poly2, axes: dict[str, int], mult: int, on_old: bool, new: int, axis: str) -> None:
        if mult >= 2 or on_old:
            self.queue.append(_Point(local, axes))
        else:
            self.strict_meets[new] += 1
            self.strict_points.append(StrictPoint(new, axis, local))


def resolve(f: CurvePoly) -> ResolutionData:
    """Embedded resolution of ``(A^2, C)`` that also resolves the origin.

    The origin is always blown up first, then every point where the total
    transform fails to be simple normal crossing.
    """
    if not isinstance(f, CurvePoly):
        f = CurvePoly(f)
    if not is_squarefree(f):
        raise NonReducedInput(f"{f} has a repeated factor")
    return _Resolver(f).run()


def class_open(res: ResolutionData, i: int) -> LaurentPoly:
    """Class of ``E_i`` minus the strict transform and the other divisors."""
    d = res.divisor(i)
    if d.open_class is not None:
        return d.open_class
    if res.ambient_dim != 2:
        raise ValueError("open classes are only derived from the dual graph for surfaces")
    return L + 1 - (len(d.neighbors) + d.strict_meets)


def class_strict(res: ResolutionData, i: int) -> LaurentPoly:
    """Class of ``E_i`` meet the strict transform, away from other divisors."""
    d = res.divisor(i)
    if d.strict_class is not None:
        return d.strict_class
    return LaurentPoly({0: d.strict_meets})


def order_one_set(res: ResolutionData) -> set[int]:
    return {d.id for d in res.divisors if d.m == 1}


def strict_meets_order_one(res: ResolutionData) -> bool:
    return any(class_strict(res, i) for i in order_one_set(res))


def has_smooth_branch(f: CurvePoly | ResolutionData) -> bool:
    """Whether some branch of the curve at the origin is smooth.

    Read off the resolution: a smooth branch is one whose strict transform
    meets a divisor of order 1.
    """
    res = f if isinstance(f, ResolutionData) else resolve(f)
    return strict_meets_order_one(res)


def divisor_table(res: ResolutionData) -> list[Mapping[str, object]]:
    return [
        {
            "id": d.id,
            "N": d.N,
            "nu": d.nu,
            "m": d.m,
            "neighbors": sorted(d.neighbors),
            "strict_meets": d.strict_meets,
        }
        for d in res.divisors
    ]
