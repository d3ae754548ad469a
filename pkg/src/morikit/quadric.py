"""Exact geometry of the positive cone of a Lorentzian form.

Setting: ``Q`` is a symmetric rational matrix of signature (1, rho - 1) and
``h`` satisfies ``q(h) > 0``. The closed positive cone is
``{x : q(x) >= 0, (h, x) >= 0}``; it is self-dual under ``Q``.

The workhorse is :func:`max_q_on_slice`: maximizing ``q`` over the
polyhedron ``{(h, x) = 1, c_i . x >= 0}``. On that slice ``q`` is strictly
concave, so the maximizer is unique and rational: it is the critical point
of ``q`` on the affine hull of whichever face contains it. Enumerating
candidate active sets therefore gives an exact answer with no square roots.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import intmath
from .cones import RationalCone


def qform(Q, x, y=None):
    return intmath.bilinear(Q, x, x if y is None else y)


def in_positive_cone(Q, h, x) -> bool:
    return qform(Q, x) >= 0 and qform(Q, h, x) >= 0


def in_positive_interior(Q, h, x) -> bool:
    return qform(Q, x) > 0 and qform(Q, h, x) > 0


def _critical_point(Q, Qinv, rows, rhs):
    """Critical point of x^T Q x on {rows . x = rhs}; None if degenerate."""
    B = [[Fraction(c) for c in r] for r in rows]
    QiBt = intmath.matmul(Qinv, intmath.transpose(B))
    S = intmath.matmul(B, QiBt)
    lam = intmath.solve(S, rhs)
    if lam is None:
        return None
    return intmath.matvec(QiBt, lam)


def max_q_on_slice(Q, h, ineqs: Sequence[Sequence], Qinv=None):
    """Maximize q over ``{x : (h, x) = 1, c . x >= 0 for c in ineqs}``.

    Returns ``(value, point)`` or ``None`` when the polyhedron is empty.
    """
    rho = len(Q)
    if Qinv is None:
        Qinv = intmath.inverse(Q)
    hrow = intmath.matvec(Q, h)
    ineqs = [list(c) for c in ineqs if any(c)]
    best = None
    for k in range(0, min(len(ineqs), rho - 1) + 1):
        for active in combinations(range(len(ineqs)), k):
            rows = [hrow] + [ineqs[i] for i in active]
            if intmath.rank(rows) != len(rows):
                continue
            x = _critical_point(Q, Qinv, rows, [1] + [0] * k)
            if x is None:
                continue
            if any(intmath.dot(c, x) < 0 for c in ineqs):
                continue
            val = qform(Q, x)
            if best is None or val > best[0]:
                best = (val, x)
    return best


def excluded_by_cone(Q, h, x, walls: Sequence[Sequence], Qinv=None) -> bool:
    """True iff ``x`` is *not* in ``cone(walls) + positive cone``.

    Equivalently, some D in the positive cone with (D, w) >= 0 for all walls
    has (D, x) < 0. ``h`` must lie strictly inside that region.
    """
    if Qinv is None:
        Qinv = intmath.inverse(Q)
    cov = [intmath.matvec(Q, w) for w in walls]
    ell = intmath.matvec(Q, x)
    if not any(ell):
        return False
    res = max_q_on_slice(Q, h, cov + [[-c for c in ell]], Qinv)
    if res is None or res[0] <= 0:
        return False
    val, point = res
    if intmath.dot(ell, point) < 0:
        return True
    # the best point sits on x^perp; any direction in the wall cone with
    # negative x-pairing can be added to it
    if not walls:
        return True
    return not RationalCone.from_rays([intmath.clear_denominators(w) for w in walls], len(Q)).contains(
        intmath.clear_denominators(x)
    )


def irredundant(Q, h, vectors: Sequence[Sequence]) -> list[int]:
    """Indices of vectors that are needed to generate ``cone(vectors) + Pos``."""
    Qinv = intmath.inverse(Q)
    alive = list(range(len(vectors)))
    for i in list(alive):
        others = [vectors[j] for j in alive if j != i]
        if not excluded_by_cone(Q, h, vectors[i], others, Qinv):
            alive.remove(i)
    return alive


def isotropic_rays_rank2(Q, h) -> list[tuple[int, ...]] | None:
    """The two boundary rays of the positive cone in rank 2, if rational."""
    a, b, c = Fraction(Q[0][0]), Fraction(Q[0][1]), Fraction(Q[1][1])
    disc = b * b - a * c
    root = intmath.rational_sqrt(disc)
    if root is None:
        return None
    if a != 0:
        cands = [(-b + root, a), (-b - root, a)]
    else:
        cands = [(1, 0), (-c, 2 * b)]
    out = []
    for x in cands:
        p = intmath.primitive(x)
        if qform(Q, h, p) < 0:
            p = [-t for t in p]
        out.append(tuple(p))
    return sorted(set(out))
