"""Enumeration of the curve classes generating the Mori cone.

The generating set is

    { a in Lambda_alg : a^2 >= -2, |(a, v)| <= v^2 / 2, (h, theta(a)) > 0 }

together with the positive cone. It is infinite; we cut it by the height
``(h, theta(a)) <= B``. On that region the positive-definite majorant
``M(x) = 2 q(pi x) - x^2`` (``pi`` = projection onto span(v, h)) is bounded,
so a Fincke-Pohst search over an LLL-reduced basis of ``M`` is exhaustive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import intmath, quadric
from .markman import CurveClass, ExtendedAlgebraicLattice, H2Coordinates, theta_dual


class PolarizationOnWallError(ValueError):
    """The polarization is orthogonal to a negative class of the generating set."""

    field = "ample"


class BudgetError(ValueError):
    field = "budget"


@dataclass(frozen=True)
class EnumerationBudget:
    height_bound: Fraction
    coeff_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "height_bound", Fraction(self.height_bound))
        if self.height_bound <= 0:
            raise BudgetError("height_bound must be positive")
        if self.coeff_bound is not None and self.coeff_bound < 1:
            raise BudgetError("coeff_bound must be >= 1")


def default_budget(E: ExtendedAlgebraicLattice) -> EnumerationBudget:
    return EnumerationBudget(Fraction(10 * (2 * E.n - 2)))


@dataclass(frozen=True)
class TheoremClass:
    a: tuple[int, ...]
    R: CurveClass
    a_sq: int
    av: int
    height: Fraction

    def sort_key(self):
        return (self.height, self.a)


def _make(E: ExtendedAlgebraicLattice, a) -> TheoremClass:
    a = tuple(int(c) for c in a)
    R = theta_dual(E, a)
    return TheoremClass(a, R, E.pair(a, a), E.pair(a, E.v), Fraction(E.pair(E.h, a)))


def theorem_predicate(E: ExtendedAlgebraicLattice, a) -> bool:
    """The literal membership condition, without the height cut."""
    return (
        E.pair(a, a) >= -2
        and 2 * abs(E.pair(a, E.v)) <= E.v_sq
        and E.pair(E.h, theta_dual(E, a).coords) > 0
    )


def majorant(E: ExtendedAlgebraicLattice) -> list[list[Fraction]]:
    """Gram matrix of M(x) = 2 q(pi x) - (x, x)."""
    G = E.gram
    Gv = intmath.matvec(G, E.v)
    Gh = intmath.matvec(G, E.h)
    vv, hh = Fraction(E.v_sq), Fraction(E.pair(E.h, E.h))
    r = E.rank
    # v and h are orthogonal, so q(pi x) = (x,v)^2/v^2 + (x,h)^2/h^2
    return [
        [2 * (Gv[i] * Gv[j] / vv + Gh[i] * Gh[j] / hh) - G[i][j] for j in range(r)]
        for i in range(r)
    ]


def _search_bound(E: ExtendedAlgebraicLattice, height: Fraction) -> Fraction:
    # a^2 >= -2 and q(pi a) <= (n-1)/2 + B^2/h^2 give M(a) <= 2 q(pi a) + 2
    hh = Fraction(E.pair(E.h, E.h))
    return Fraction(E.n - 1) + 2 * height * height / hh + 2


def _candidates(E: ExtendedAlgebraicLattice, height: Fraction) -> list[tuple[int, ...]]:
    M = majorant(E)
    U = intmath.gram_lll(M)
    Mred = intmath.matmul(intmath.transpose(U), intmath.matmul(M, U))
    ys = intmath.short_vectors(Mred, _search_bound(E, height))
    return [tuple(intmath.matvec(U, y)) for y in ys]


def _scan(E: ExtendedAlgebraicLattice, height: Fraction) -> list[TheoremClass]:
    """Negative classes of the generating set with 0 <= height <= bound."""
    out = []
    half = E.v_sq
    for a in _candidates(E, height):
        a_sq = E.pair(a, a)
        if a_sq < -2:
            continue
        av = E.pair(a, E.v)
        if 2 * abs(av) > half:
            continue
        ht = E.pair(E.h, a)
        if ht < 0 or ht > height:
            continue
        # q(theta a) < 0  <=>  a^2 v^2 < (a, v)^2
        if a_sq * E.v_sq >= av * av:
            continue
        out.append(_make(E, a))
    return out


def enumerate_theorem_set(E: ExtendedAlgebraicLattice, budget: EnumerationBudget) -> list[TheoremClass]:
    """Negative-square members of the generating set up to the height bound.

    Raises :class:`PolarizationOnWallError` when some negative class has
    height exactly 0, i.e. ``h`` is not in the interior of a chamber.
    """
    found = _scan(E, budget.height_bound)
    on_wall = [t for t in found if t.height == 0]
    if on_wall:
        raise PolarizationOnWallError(
            f"polarization is orthogonal to the curve class {on_wall[0].R.coords}; perturb it"
        )
    return sorted(found, key=TheoremClass.sort_key)


def box_oracle(E: ExtendedAlgebraicLattice, coeff_bound: int) -> list[TheoremClass]:
    """Brute force over the coefficient box, applying the membership test literally."""
    if coeff_bound < 1:
        raise BudgetError("coeff_bound must be >= 1")
    rng = range(-coeff_bound, coeff_bound + 1)
    out = [_make(E, a) for a in product(rng, repeat=E.rank) if theorem_predicate(E, a)]
    return sorted(out, key=TheoremClass.sort_key)


def _dedup_rays(classes: Sequence[TheoremClass]) -> list[TheoremClass]:
    best: dict[tuple[int, ...], TheoremClass] = {}
    for t in sorted(classes, key=TheoremClass.sort_key):
        best.setdefault(t.R.direction(), t)
    return sorted(best.values(), key=TheoremClass.sort_key)


def _rank2_certificate_height(Q, h, c_values, lattice_gram=None, disc_gram=None) -> Fraction:
    """Height up to which a search finds the outermost class on every hyperbola.

    ``Q`` is the rank-2 Gram in which the classes live (they are in the dual
    lattice ``Q^{-1} Z^2``), ``c_values`` the finitely many negative squares.
    When the isotropic directions are rational the classes on each hyperbola
    are finite in number and bounded; otherwise the hyperbolas carry an
    infinite isometry group (from the Pell equation) and the outermost point
    on a branch lies within one period of the branch vertex.
    """
    c_max = max((abs(Fraction(c)) for c in c_values), default=Fraction(0))
    if c_max == 0:
        return Fraction(0)
    iso = quadric.isotropic_rays_rank2(Q, h)
    if iso is not None:
        f1, f2 = iso
        # (R, f_i) are integers with product |c| (f1, f2) / 2
        return c_max * (abs(quadric.qform(Q, h, f1)) + abs(quadric.qform(Q, h, f2))) / 2
    A, B, C = Q[0][0], Q[0][1], Q[1][1]
    D = B * B - A * C
    t, u = intmath.pell_fundamental(D)
    g = [[t - B * u, -C * u], [A * u, t + B * u]]
    # smallest power acting trivially on the discriminant group Q^{-1}Z^2 / Z^2
    Qinv = intmath.inverse(Q)
    power = [[1, 0], [0, 1]]
    for _ in range(10_000):
        power = intmath.matmul(g, power)
        diff = [[power[i][j] - (i == j) for j in range(2)] for i in range(2)]
        if all(Fraction(x).denominator == 1 for row in intmath.matmul(diff, Qinv) for x in row):
            break
    else:
        raise RuntimeError("isometry order on discriminant group not found")
    tr = Fraction(power[0][0] + power[1][1], 2)  # cosh of the period
    hh = Fraction(quadric.qform(Q, h))
    # height <= sqrt(|c| h^2) * sinh(period)
    return Fraction(intmath.ceil_sqrt(c_max * hh * (tr * tr - 1)))


@dataclass
class ExtremalSearch:
    rays: list[TheoremClass]
    complete: bool
    searched_height: Fraction


def extremal_search(E: ExtendedAlgebraicLattice, budget: EnumerationBudget, max_certificate_height=None) -> ExtremalSearch:
    """Candidate negative extremal rays plus a completeness verdict.

    For rank(H^2_alg) = 2 the search height is raised to the certificate
    height (if that stays below ``max_certificate_height``, default
    100 x the budget), which makes the answer provably complete.
    """
    coords = H2Coordinates(E)
    height = budget.height_bound
    complete = coords.rho <= 1
    if coords.rho == 2:
        cs = set()
        N = E.v_sq
        for av in range(-(N // 2), N // 2 + 1):
            a_sq = -2
            while a_sq * N < av * av:
                cs.add(Fraction(a_sq) - Fraction(av * av, N))
                a_sq += 1
        h2 = [int(x) for x in coords.to_h2(E.h)]
        needed = _rank2_certificate_height(coords.gram, h2, cs)
        cap = Fraction(max_certificate_height) if max_certificate_height is not None else 100 * height
        if needed <= max(height, cap):
            height = max(height, needed)
            complete = True
    found = enumerate_theorem_set(E, EnumerationBudget(height))
    rays = _dedup_rays(found)
    if coords.rho >= 2 and rays:
        vecs = [coords.to_h2(t.R) for t in rays]
        h2 = coords.to_h2(E.h)
        keep = quadric.irredundant(coords.gram, h2, vecs)
        rays = [rays[i] for i in keep]
    return ExtremalSearch(rays, complete, height)


def negative_extremal_rays(E: ExtendedAlgebraicLattice, budget: EnumerationBudget) -> list[TheoremClass]:
    """One representative per extremal ray (smallest height, then lexicographic)."""
    return extremal_search(E, budget).rays


def k3_pseudoeffective(pic_gram, h, budget: EnumerationBudget) -> list[tuple[int, ...]]:
    """Extremal rays of the cone spanned by {D : D^2 >= -2, (D, h) > 0}.

    Returns primitive integral generators: the irredundant (-2)-classes,
    plus in rank 2 the rational isotropic boundary rays on any side without
    a (-2)-class. Rank 1 and 2 answers are complete.
    """
    from .lattice import Lattice, signature

    L = Lattice(pic_gram)
    rho = L.rank
    if signature(L) != (1, rho - 1):
        raise ValueError(f"Picard lattice must have signature (1, {rho - 1})")
    h = [int(c) for c in h]
    G = L.gram
    hh = Fraction(intmath.bilinear(G, h, h))
    if hh <= 0:
        raise ValueError("polarization must have positive square")
    if rho == 1:
        return [(1,)] if h[0] > 0 else [(-1,)]
    height = budget.height_bound
    if rho == 2:
        cert = _rank2_certificate_height(G, h, [-2])
        if cert <= 100 * height:
            height = max(height, cert)
    Gh = intmath.matvec(G, h)
    M = [[2 * Gh[i] * Gh[j] / hh - G[i][j] for j in range(rho)] for i in range(rho)]
    U = intmath.gram_lll(M)
    Mred = intmath.matmul(intmath.transpose(U), intmath.matmul(M, U))
    bound = 2 * height * height / hh + 2
    roots = []
    for y in intmath.short_vectors(Mred, bound):
        d = intmath.matvec(U, y)
        if intmath.bilinear(G, d, d) == -2 and 0 < intmath.dot(Gh, d) <= height:
            roots.append(tuple(d))
    roots.sort(key=lambda d: (intmath.dot(Gh, d), d))
    keep = quadric.irredundant(G, h, roots) if roots else []
    rays = [roots[i] for i in keep]
    if rho == 2:
        iso = quadric.isotropic_rays_rank2(G, h) or []
        for f in iso:
            # an isotropic ray is extremal iff no root lies beyond it
            if not any(_beyond(G, h, f, r) for r in rays):
                rays.append(f)
    return sorted(set(rays))


def _beyond(G, h, f, r) -> bool:
    """In rank 2: r and f lie on the same side of h, with r outside the positive cone."""
    # same side: the determinant with h has the same sign
    def side(x):
        return (h[0] * x[1] - h[1] * x[0] > 0) - (h[0] * x[1] - h[1] * x[0] < 0)

    return side(f) == side(r)
