"""Mori, nef and movable cones of a K3^[n]-type model.

All cones live in H^2_alg (x) Q (curves are identified with divisors via the
rational Beauville-Bogomolov form) and use the coordinates of
:class:`~morikit.markman.H2Coordinates`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmath, quadric
from .cones import RationalCone, full_space
from .enumeration import (
    EnumerationBudget,
    TheoremClass,
    enumerate_theorem_set,
    extremal_search,
    PolarizationOnWallError,
)
from .markman import (
    CurveClass,
    DivisorClass,
    ExtendedAlgebraicLattice,
    H2Coordinates,
)
from .lattice import orthogonal_complement


class ConeError(ValueError):
    field = "ample"


class UnsupportedRankError(ValueError):
    field = "model"


MAX_CHAMBER_RANK = 4


@dataclass(frozen=True)
class ConeDescription:
    """Mori cone: positive cone plus finitely many negative extremal rays."""

    rays: tuple[TheoremClass, ...]
    polyhedral: RationalCone | None
    gram: tuple[tuple[int, ...], ...]
    h: tuple[int, ...]
    complete: bool
    coords: H2Coordinates = field(compare=False, repr=False)

    def ray_vectors(self) -> list[list[Fraction]]:
        return [self.coords.to_h2(t.R) for t in self.rays]


@dataclass(frozen=True)
class NefCone:
    """``{D in positive cone : (D, R) >= 0 for all walls R}``.

    ``cone`` holds the polyhedral part (facets = walls); the nef cone is its
    intersection with the closed positive cone.
    """

    cone: RationalCone
    walls: tuple[CurveClass, ...]
    gram: tuple[tuple[int, ...], ...]
    h: tuple[int, ...]
    complete: bool

    def contains(self, x: Sequence) -> bool:
        return self.cone.contains(x) and quadric.in_positive_cone(self.gram, self.h, x)

    def interior_contains(self, x: Sequence) -> bool:
        return (
            all(intmath.dot(f, x) > 0 for f in self.cone.facets)
            and quadric.in_positive_interior(self.gram, self.h, x)
        )

    def rational_rays(self) -> list[tuple[int, ...]]:
        """Rational extreme rays; the full set of boundary rays in rank 2 when they are rational."""
        cands = list(self.cone.rays)
        if len(self.gram) == 2:
            cands += quadric.isotropic_rays_rank2(self.gram, self.h) or []
        inside = [c for c in cands if self.contains(c)]
        if not inside:
            return []
        return [r for r in RationalCone.from_rays(inside, len(self.gram)).rays]


@dataclass(frozen=True)
class Reflection:
    """Reflection in ``e``; ``matrix`` acts on coordinates in the H^2_alg basis."""

    e: DivisorClass
    matrix: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...] = field(repr=False)

    def apply(self, x: Sequence) -> list:
        """Image of a class given in Lambda_alg coordinates."""
        e = self.e.coords
        t = Fraction(2 * intmath.bilinear(self.gram, x, e), intmath.bilinear(self.gram, e, e))
        out = [Fraction(a) - t * b for a, b in zip(x, e)]
        return [int(c) if c.denominator == 1 else c for c in out]

    def apply_h2(self, y: Sequence) -> list:
        return intmath.matvec(self.matrix, y)


@dataclass
class Chamber:
    cone: RationalCone
    walls: list[CurveClass]
    exceptional: list[bool]
    contains_h: bool
    interior: list[Fraction]
    ample: tuple[int, ...]
    complete: bool
    nef: NefCone = field(repr=False)


@dataclass
class MovableDecomposition:
    chambers: list[Chamber]
    walls: list[tuple[int, ...]]  # exceptional divisors in H^2 coordinates, positive on the region
    gram: tuple[tuple[int, ...], ...]
    h: tuple[int, ...]
    complete: bool

    def contains(self, x: Sequence) -> bool:
        return quadric.in_positive_cone(self.gram, self.h, x) and all(
            quadric.qform(self.gram, x, e) >= 0 for e in self.walls
        )


def _h2_setup(E: ExtendedAlgebraicLattice):
    coords = H2Coordinates(E)
    gram = tuple(tuple(int(c) for c in row) for row in coords.gram)
    h2 = tuple(int(c) for c in coords.to_h2(E.h))
    return coords, gram, h2


def mori_cone(E: ExtendedAlgebraicLattice, budget: EnumerationBudget) -> ConeDescription:
    coords, gram, h2 = _h2_setup(E)
    search = extremal_search(E, budget)
    vecs = [coords.to_h2(t.R) for t in search.rays]
    poly = RationalCone.from_rays(vecs, coords.rho) if vecs else None
    return ConeDescription(tuple(search.rays), poly, gram, h2, search.complete, coords)


def contains(C: ConeDescription, x: Sequence) -> bool:
    """Exact membership in ``positive cone + cone(rays)``.

    ``x`` may be given in H^2_alg coordinates or in Lambda_alg coordinates.
    """
    x = list(x.coords) if hasattr(x, "coords") else list(x)
    if len(x) != C.coords.rho:
        x = C.coords.to_h2(x)
    if not any(x):
        return True
    if quadric.in_positive_cone(C.gram, C.h, x):
        return True
    return not quadric.excluded_by_cone(C.gram, C.h, x, C.ray_vectors())


def _nef_from(coords: H2Coordinates, gram, h2, rays: Sequence[TheoremClass], complete: bool) -> NefCone:
    rho = coords.rho
    covectors = [intmath.matvec(gram, coords.to_h2(t.R)) for t in rays]
    cone = RationalCone.from_facets(covectors, rho) if covectors else full_space(rho)
    nef = NefCone(cone, tuple(t.R for t in rays), gram, h2, complete)
    if not nef.contains(h2):
        raise ConeError("supplied polarization outside computed nef cone")
    return nef


def nef_cone(E: ExtendedAlgebraicLattice, budget: EnumerationBudget) -> NefCone:
    coords, gram, h2 = _h2_setup(E)
    search = extremal_search(E, budget)
    return _nef_from(coords, gram, h2, search.rays, search.complete)


def reflection(E: ExtendedAlgebraicLattice, e) -> Reflection | None:
    """x -> x - 2 (x, e)/(e, e) e, or None if it is not integral on H^2_alg.

    Integrality is tested on ``v^perp`` (the algebraic part of H^2(X, Z)),
    where the reflection of an exceptional divisor lives. On all of
    Lambda_alg it can fail even for genuine exceptional classes.
    """
    e = tuple(int(c) for c in (e.coords if hasattr(e, "coords") else e))
    ee = E.pair(e, e)
    if ee >= 0:
        raise ValueError(f"reflection needs a negative class, got (e, e) = {ee}")
    if E.pair(e, E.v) != 0:
        raise ValueError("reflection needs a class orthogonal to v")
    coords = H2Coordinates(E)
    cols = []
    for b in coords.basis:
        t = Fraction(2 * E.pair(b, e), ee)
        if t.denominator != 1:
            return None
        cols.append(coords.to_h2([x - t * y for x, y in zip(b, e)]))
    M = tuple(tuple(int(cols[j][i]) for j in range(coords.rho)) for i in range(coords.rho))
    return Reflection(DivisorClass(e), M, tuple(tuple(r) for r in E.gram))


def exceptional_candidates(E: ExtendedAlgebraicLattice, budget: EnumerationBudget) -> list[DivisorClass]:
    """Primitive negative divisors with an integral reflection that are proportional
    to an enumerated curve class."""
    seen = {}
    for t in enumerate_theorem_set(E, budget):
        e = t.R.direction()
        if e in seen:
            continue
        seen[e] = reflection(E, e) is not None
    out = [DivisorClass(e) for e, ok in seen.items() if ok]
    return sorted(out, key=lambda d: (E.pair(E.h, d.coords), d.coords))


def reflection_fixes_complement(E: ExtendedAlgebraicLattice, rho: Reflection) -> bool:
    return all(list(rho.apply(b.coords)) == list(b.coords) for b in orthogonal_complement(E.lattice, [rho.e.coords]))


# -- movable cone and its chamber decomposition ------------------------------


def _scaled_budget(E: ExtendedAlgebraicLattice, ample, budget: EnumerationBudget) -> EnumerationBudget:
    ratio = Fraction(E.pair(ample, ample), E.pair(E.h, E.h))
    s = intmath.ceil_sqrt(budget.height_bound ** 2 * ratio)
    return EnumerationBudget(max(Fraction(s), budget.height_bound))


def _chamber_at(E: ExtendedAlgebraicLattice, coords: H2Coordinates, gram, ample, budget) -> Chamber:
    Ea = E.with_ample(ample)
    search = extremal_search(Ea, _scaled_budget(E, ample, budget))
    h2 = tuple(int(c) for c in coords.to_h2(ample))
    nef = _nef_from(coords, gram, h2, search.rays, search.complete)
    exc = [reflection(E, t.R.direction()) is not None for t in search.rays]
    return Chamber(
        cone=nef.cone,
        walls=[t.R for t in search.rays],
        exceptional=exc,
        contains_h=False,
        interior=[Fraction(c) for c in h2],
        ample=tuple(ample),
        complete=search.complete,
        nef=nef,
    )


def _to_ample(coords: H2Coordinates, y: Sequence[Fraction]) -> tuple[int, ...]:
    return tuple(intmath.primitive(coords.from_h2(y)))


def _facet_point(ch: Chamber, coords, gram, k: int) -> list[Fraction] | None:
    """Rational point in the relative interior of facet k, inside the positive cone."""
    cov = [intmath.matvec(gram, coords.to_h2(w)) for w in ch.walls]
    ineqs = cov + [[-c for c in cov[k]]]
    res = quadric.max_q_on_slice(gram, ch.nef.h, ineqs)
    if res is None or res[0] <= 0:
        return None
    x = res[1]
    face = RationalCone.from_facets(ineqs, coords.rho)
    s = face.interior_point()
    hs = abs(quadric.qform(gram, ch.nef.h, s)) + 1
    for j in range(64):
        y = [a + Fraction(b, hs * 2 ** j) for a, b in zip(x, s)]
        if quadric.in_positive_interior(gram, ch.nef.h, y) and intmath.dot(cov[k], y) == 0:
            return y
    return None


def _cross(E, coords, gram, ch: Chamber, k: int, budget) -> Chamber | None:
    y = _facet_point(ch, coords, gram, k)
    if y is None:
        return None
    R = coords.to_h2(ch.walls[k])
    hy = quadric.qform(gram, ch.nef.h, y)
    rdir = ch.walls[k].direction()
    for j in range(1, 40):
        t = hy / (abs(quadric.qform(gram, ch.nef.h, R)) * 2 ** j)
        z = [a + t * b for a, b in zip(y, R)]
        if not quadric.in_positive_interior(gram, ch.nef.h, z):
            continue
        try:
            nxt = _chamber_at(E, coords, gram, _to_ample(coords, z), budget)
        except (PolarizationOnWallError, ValueError):
            continue
        dirs = {w.direction() for w in nxt.walls}
        if tuple(-c for c in rdir) in dirs and nxt.nef.contains(y):
            return _tidy(coords, gram, nxt)
    return None


def _tidy(coords: H2Coordinates, gram, ch: Chamber) -> Chamber:
    """Swap the crossing point for a small ample class of the same chamber, if one is handy."""
    rays = ch.nef.rational_rays()
    if not rays:
        return ch
    y = intmath.primitive([sum(c) for c in zip(*rays)])
    if not (ch.cone.interior_contains(y) and quadric.in_positive_interior(gram, ch.nef.h, y)):
        return ch
    if any(quadric.qform(gram, y, coords.to_h2(w)) == 0 for w in ch.walls):
        return ch
    ch.interior = [Fraction(c) for c in y]
    ch.ample = _to_ample(coords, y)
    return ch


def movable_decomposition(
    E: ExtendedAlgebraicLattice, budget: EnumerationBudget, word_bound: int = 8
) -> MovableDecomposition:
    """Chambers (nef cones of birational models) tiling the movable cone.

    Starting from the nef cone of ``h`` we cross every wall whose curve class
    is not proportional to an exceptional divisor; exceptional walls bound
    the movable cone. Each chamber's walls are recomputed from the
    generating set with the chamber's interior point as polarization.
    """
    coords, gram, h2 = _h2_setup(E)
    if coords.rho > MAX_CHAMBER_RANK:
        raise UnsupportedRankError(
            f"chamber decomposition supports rank(H^2_alg) <= {MAX_CHAMBER_RANK}, got {coords.rho}"
        )
    start = _chamber_at(E, coords, gram, E.h, budget)
    start.contains_h = True
    chambers = [start]
    seen = {start.cone: 0}
    complete = start.complete
    walls: set[tuple[int, ...]] = set()
    queue = deque([(start, 0)])
    while queue:
        ch, depth = queue.popleft()
        for k, w in enumerate(ch.walls):
            if ch.exceptional[k]:
                walls.add(tuple(intmath.primitive(coords.to_h2(w))))
                continue
            if depth >= word_bound:
                complete = False
                continue
            nxt = _cross(E, coords, gram, ch, k, budget)
            if nxt is None:
                complete = False
                continue
            if nxt.cone in seen:
                continue
            seen[nxt.cone] = len(chambers)
            chambers.append(nxt)
            complete = complete and nxt.complete
            queue.append((nxt, depth + 1))
    return MovableDecomposition(chambers, sorted(walls), gram, h2, complete)


def movable_chambers(E: ExtendedAlgebraicLattice, budget: EnumerationBudget, word_bound: int = 8) -> list[Chamber]:
    return movable_decomposition(E, budget, word_bound).chambers


def reflect_into_movable(decomp: MovableDecomposition, p: Sequence, word_bound: int = 8):
    """Reflect a positive-cone point through violated exceptional walls.

    Returns ``(point, steps)``; ``steps`` exceeds ``word_bound`` only if the
    point did not land in the region within the budget.
    """
    G = decomp.gram
    p = [Fraction(c) for c in p]
    for steps in range(word_bound + 1):
        bad = next((e for e in decomp.walls if quadric.qform(G, p, e) < 0), None)
        if bad is None:
            return p, steps
        ee = quadric.qform(G, bad)
        t = 2 * Fraction(quadric.qform(G, p, bad), ee)
        p = [a - t * b for a, b in zip(p, bad)]
    return p, word_bound + 1
