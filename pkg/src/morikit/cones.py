"""Exact rational polyhedral cones via the double description method."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import intmath

IntVec = tuple[int, ...]


def _prim(x: Sequence) -> IntVec:
    return tuple(intmath.primitive(x))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def double_description(rows: Sequence[Sequence], dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Generators of {x in Q^dim : a . x >= 0 for every row a}.

    Returns ``(lineality_basis, rays)``. Rows are added one at a time
    (Motzkin's incremental scheme); new rays are formed only from adjacent
    pairs, adjacency being decided by the rank of the common active rows.
    """
    A = [_prim(r) for r in rows if any(r)]
    lin: list[list[int]] = intmath.identity(dim)
    rays: list[IntVec] = []
    done: list[IntVec] = []
    for a in A:
        k = next((i for i, l in enumerate(lin) if _dot(a, l) != 0), None)
        if k is not None:
            l = lin.pop(k)
            al = _dot(a, l)
            if al < 0:
                l, al = [-x for x in l], -al
            lin = [list(_prim([x * al - _dot(a, lp) * y for x, y in zip(lp, l)]))
                   if _dot(a, lp) else lp for lp in lin]
            lin = [lp for lp in lin if any(lp)]
            rays = [_prim([x * al - _dot(a, r) * y for x, y in zip(r, l)]) for r in rays]
            rays.append(tuple(l))
            done.append(a)
            rays = _dedup(rays)
            continue
        pos = [r for r in rays if _dot(a, r) > 0]
        neg = [r for r in rays if _dot(a, r) < 0]
        zero = [r for r in rays if _dot(a, r) == 0]
        target = dim - len(lin) - 2
        zsets = {r: frozenset(i for i, b in enumerate(done) if _dot(b, r) == 0) for r in pos + neg}
        new = []
        for p in pos:
            for q in neg:
                common = zsets[p] & zsets[q]
                if len(common) < target:
                    continue
                if intmath.rank([done[i] for i in common]) != target:
                    continue
                ap, aq = _dot(a, p), _dot(a, q)
                new.append(_prim([ap * y - aq * x for x, y in zip(p, q)]))
        rays = _dedup(pos + zero + new)
        done.append(a)
    return [tuple(l) for l in lin], rays


def _dedup(vs: Iterable[IntVec]) -> list[IntVec]:
    seen, out = set(), []
    for v in vs:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _canonical(lin: Sequence[Sequence[int]], rays: Sequence[Sequence[int]], dim: int) -> tuple[IntVec, ...]:
    """Lineality as +/- pairs of a reduced basis; pointed rays projected off the lineality."""
    out: list[IntVec] = []
    if lin:
        R, _ = intmath.rref(lin)
        basis = [_prim(r) for r in R]
        for b in basis:
            out.append(b)
            out.append(tuple(-x for x in b))
        # orthogonal projection onto lin^perp in the Euclidean metric
        P = [list(map(Fraction, r)) for r in R]
        gramP = intmath.matmul(P, intmath.transpose(P))
        inv = intmath.inverse(gramP)

        def project(x):
            c = intmath.matvec(inv, [_dot(p, x) for p in P])
            return [xi - sum(ci * p[j] for ci, p in zip(c, P)) for j, xi in enumerate(x)]

        pointed = []
        for r in rays:
            y = project(r)
            if any(y):
                pointed.append(_prim(y))
    else:
        pointed = [tuple(r) for r in rays]
    return tuple(sorted(set(out))) + tuple(sorted(set(pointed)))


@dataclass(frozen=True)
class RationalCone:
    """Cone with both descriptions: ``cone(rays) = {x : f . x >= 0 for f in facets}``.

    Lineality directions appear among the rays as +/- pairs and equations
    among the facets as +/- pairs. Both lists are canonical, so equality of
    cones is equality of dataclasses.
    """

    ambient_dim: int
    rays: tuple[IntVec, ...]
    facets: tuple[IntVec, ...]

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence], dim: int | None = None) -> "RationalCone":
        rays = [r for r in rays if any(r)]
        if dim is None:
            dim = len(rays[0])
        flin, fr = double_description([intmath.clear_denominators(r) for r in rays], dim)
        facets = _canonical(flin, fr, dim)
        rlin, rr = double_description(facets, dim)
        return cls(dim, _canonical(rlin, rr, dim), facets)

    @classmethod
    def from_facets(cls, facets: Sequence[Sequence], dim: int | None = None) -> "RationalCone":
        facets = [f for f in facets if any(f)]
        if dim is None:
            dim = len(facets[0])
        rlin, rr = double_description([intmath.clear_denominators(f) for f in facets], dim)
        rays = _canonical(rlin, rr, dim)
        flin, fr = double_description(rays, dim)
        return cls(dim, rays, _canonical(flin, fr, dim))

    def contains(self, x: Sequence) -> bool:
        return all(_dot(f, x) >= 0 for f in self.facets)

    def interior_contains(self, x: Sequence) -> bool:
        """Strictly inside every proper facet (equations must still hold)."""
        eqs = self.equations()
        for f in self.facets:
            val = _dot(f, x)
            if f in eqs:
                if val != 0:
                    return False
            elif val <= 0:
                return False
        return True

    def equations(self) -> set[IntVec]:
        fs = set(self.facets)
        return {f for f in fs if tuple(-c for c in f) in fs}

    def lineality(self) -> list[IntVec]:
        rs = set(self.rays)
        return [r for r in self.rays if tuple(-c for c in r) in rs]

    @property
    def dimension(self) -> int:
        return intmath.rank(self.rays) if self.rays else 0

    def interior_point(self) -> list[int]:
        """Sum of all generators; lies in the relative interior."""
        s = [0] * self.ambient_dim
        for r in self.rays:
            s = [a + b for a, b in zip(s, r)]
        return s


def dual_cone(C: RationalCone) -> RationalCone:
    """``{y : y . x >= 0 for all x in C}``, recomputed by double description."""
    if not C.facets:
        return RationalCone(C.ambient_dim, (), C.rays)
    return RationalCone.from_rays(C.facets, C.ambient_dim)


def full_space(dim: int) -> RationalCone:
    return RationalCone.from_facets([], dim) if dim else RationalCone(0, (), ())
