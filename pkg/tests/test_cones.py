import random
from itertools import combinations

from hypothesis import given, strategies as st

from morikit import intmath
from morikit.cones import RationalCone, dual_cone, full_space


def random_cone(rng, dim):
    k = rng.randint(1, dim + 3)
    rays = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(k)]
    if rng.random() < 0.5:
        return RationalCone.from_rays(rays, dim)
    return RationalCone.from_facets(rays, dim)


def test_double_dual_involution_100():
    rng = random.Random(20240607)
    for _ in range(100):
        C = random_cone(rng, rng.randint(2, 5))
        assert dual_cone(dual_cone(C)) == C


def test_orthant_self_dual():
    for d in range(1, 5):
        I = intmath.identity(d)
        C = RationalCone.from_rays(I, d)
        assert C.facets == C.rays
        assert dual_cone(C) == C


def test_ray_dual_is_half_plane():
    C = RationalCone.from_rays([(1, 0)], 2)
    D = dual_cone(C)
    assert D.facets == ((1, 0),)
    assert set(D.rays) == {(0, -1), (0, 1), (1, 0)}
    assert set(D.lineality()) == {(0, 1), (0, -1)}


def test_full_space_and_origin():
    W = full_space(3)
    assert W.contains((5, -7, 1)) and not W.facets
    Z = dual_cone(W)
    assert not Z.rays and Z.contains((0, 0, 0)) and not Z.contains((1, 0, 0))


def _facet_oracle(rays, dim):
    """Facets of a full-dimensional pointed cone by brute force over (dim-1)-subsets."""
    out = set()
    for sub in combinations(rays, dim - 1):
        ker = intmath.rational_kernel(list(sub), dim)
        if len(ker) != 1:
            continue
        f = intmath.primitive(ker[0])
        vals = [intmath.dot(f, r) for r in rays]
        if all(v >= 0 for v in vals):
            out.add(tuple(f))
        elif all(v <= 0 for v in vals):
            out.add(tuple(-c for c in f))
    return out


@given(st.integers(2, 4).flatmap(
    lambda d: st.lists(st.lists(st.integers(0, 4), min_size=d, max_size=d), min_size=d, max_size=d + 3)
))
def test_facets_match_brute_force(rays):
    dim = len(rays[0])
    # shift into the open orthant so the cone is pointed
    rays = [[c + 1 for c in r] for r in rays]
    if intmath.rank(rays) < dim:
        return
    C = RationalCone.from_rays(rays, dim)
    assert set(C.facets) == _facet_oracle(rays, dim)
    for r in rays:
        assert C.contains(r)
    for r in C.rays:
        # every computed ray is a nonnegative combination of the input (it is one of them up to scale)
        assert any(intmath.rank([r, s]) == 1 and intmath.dot(r, s) > 0 for s in rays)


@given(st.integers(2, 4).flatmap(
    lambda d: st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=1, max_size=d + 2)
), st.data())
def test_membership_consistent_with_generators(gens, data):
    dim = len(gens[0])
    C = RationalCone.from_rays(gens, dim)
    coeffs = data.draw(st.lists(st.integers(0, 3), min_size=len(gens), max_size=len(gens)))
    x = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(dim)]
    assert C.contains(x)
    if C.rays:
        assert C.interior_contains(C.interior_point())
    D = dual_cone(C)
    for f in D.rays:
        assert all(intmath.dot(f, r) >= 0 for r in C.rays)


def test_interior_vs_boundary():
    C = RationalCone.from_rays([(1, 0), (1, 1)], 2)
    assert C.interior_contains((2, 1))
    assert C.contains((1, 0)) and not C.interior_contains((1, 0))
    assert not C.contains((0, 1))
    assert C.dimension == 2
