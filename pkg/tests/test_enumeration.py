from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from morikit import intmath
from morikit.enumeration import (
    BudgetError,
    EnumerationBudget,
    PolarizationOnWallError,
    _search_bound,
    box_oracle,
    default_budget,
    enumerate_theorem_set,
    extremal_search,
    k3_pseudoeffective,
    majorant,
    negative_extremal_rays,
    theorem_predicate,
)
from morikit.markman import from_k3_hilbert

from conftest import FIXTURE_MODELS, hilbert

F = Fraction


def _restricted_oracle(E, cb, B):
    return {t.a for t in box_oracle(E, cb) if t.R.q < 0 and t.height <= B}


@pytest.mark.parametrize("name", ["n2_deg2", "n3_deg2", "n5_deg2"])
def test_oracle_equivalence_rank3(models, name):
    E = models[name]
    b = default_budget(E)
    enum = {t.a for t in enumerate_theorem_set(E, b) if max(map(abs, t.a)) <= 8}
    assert enum == _restricted_oracle(E, 8, b.height_bound)


def test_oracle_equivalence_rank4(models):
    E = models["n2_rank3"]
    b = EnumerationBudget(12)
    enum = {t.a for t in enumerate_theorem_set(E, b) if max(map(abs, t.a)) <= 4}
    assert enum == _restricted_oracle(E, 4, b.height_bound)


@pytest.mark.parametrize("name", sorted(FIXTURE_MODELS))
def test_length_bound(models, name):
    E = models[name]
    bound = F(-(E.n + 3), 2)
    classes = enumerate_theorem_set(E, default_budget(E))
    assert classes
    assert all(t.R.q >= bound for t in classes)
    assert all(t.R.q < 0 and 0 < t.height <= default_budget(E).height_bound for t in classes)


def test_length_bound_attained(n2_deg2, n2_budget):
    witnesses = [
        t for t in enumerate_theorem_set(n2_deg2, n2_budget)
        if t.a_sq == -2 and abs(t.av) == n2_deg2.n - 1
    ]
    assert witnesses and all(t.R.q == F(-5, 2) for t in witnesses)


@pytest.mark.parametrize("name", ["n2_deg2", "n3_deg2", "n2_rank3"])
def test_majorant_sound(models, name):
    """Every member of the height-cut set lies inside the Fincke-Pohst ellipsoid."""
    E = models[name]
    M = majorant(E)
    assert intmath.is_positive_definite(M)
    B = F(12)
    bound = _search_bound(E, B)
    cb = 6 if E.rank == 3 else 3
    for t in box_oracle(E, cb):
        if t.height <= B:
            assert intmath.bilinear(M, t.a, t.a) <= bound


def test_deterministic(models):
    E = models["n2_rank3"]
    b = default_budget(E)
    assert enumerate_theorem_set(E, b) == enumerate_theorem_set(E, b)


def test_on_wall_polarization_rejected():
    # the K3 polarization alone is orthogonal to the Hilbert-Chow curve class
    E = from_k3_hilbert([[2]], 2, [1])
    with pytest.raises(PolarizationOnWallError):
        enumerate_theorem_set(E, default_budget(E))


def test_budget_validation():
    with pytest.raises(BudgetError):
        EnumerationBudget(0)
    with pytest.raises(BudgetError):
        EnumerationBudget(5, coeff_bound=0)


def test_n2_deg2_fixture(n2_deg2, n2_budget):
    """Frozen from the box-oracle run: 7 classes, 2 extremal rays."""
    classes = enumerate_theorem_set(n2_deg2, n2_budget)
    assert len(classes) == 7
    first = classes[0]
    assert first.a == (0, 0, 1) and first.R.coords == (F(1, 2), 0, F(1, 2)) and first.height == 1
    s = extremal_search(n2_deg2, n2_budget)
    assert s.complete
    assert [t.R.coords for t in s.rays] == [(F(1, 2), 0, F(1, 2)), (F(-3, 2), 1, F(-3, 2))]
    assert [t.R.q for t in s.rays] == [F(-1, 2), F(-5, 2)]
    assert [t.height for t in s.rays] == [1, 7]
    assert negative_extremal_rays(n2_deg2, n2_budget) == s.rays


def test_representative_is_smallest_height(n2_deg2, n2_budget):
    classes = enumerate_theorem_set(n2_deg2, n2_budget)
    for t in negative_extremal_rays(n2_deg2, n2_budget):
        same = [c for c in classes if c.R.direction() == t.R.direction()]
        assert t.height == min(c.height for c in same)


def test_rank2_search_complete_for_hilbert_models(models):
    for name in ("n3_deg2", "n5_deg2", "n2_deg4"):
        assert extremal_search(models[name], default_budget(models[name])).complete


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_predicate_matches_fields(a):
    E = hilbert(*FIXTURE_MODELS["n2_deg2"])
    ok = theorem_predicate(E, a)
    expect = (
        E.pair(a, a) >= -2
        and abs(E.pair(a, E.v)) * 2 <= E.v_sq
        and E.pair(E.h, a) > 0
    )
    assert ok == expect


# -- K3 baseline --------------------------------------------------------------


def _k3_oracle(G, h, box=40):
    """Rank 2: the extremal roots maximize / minimize det(h, D)/(h, D)."""
    def hp(d):
        return intmath.bilinear(G, h, d)

    roots = [d for d in product(range(-box, box + 1), repeat=2)
             if intmath.bilinear(G, d, d) == -2 and hp(d) > 0]
    t = lambda d: F(h[0] * d[1] - h[1] * d[0], hp(d))
    out = set()
    for side in (1, -1):
        cands = [d for d in roots if side * t(d) > 0]
        if not cands:
            # no root on this side: the boundary is isotropic (if rational)
            cands = [d for d in product(range(-box, box + 1), repeat=2)
                     if any(d) and intmath.bilinear(G, d, d) == 0 and hp(d) > 0 and side * t(d) > 0]
        if cands:
            best = max(cands, key=lambda d: side * t(d))
            out.add(tuple(intmath.primitive(best)))
    return out


def test_k3_rank1():
    assert k3_pseudoeffective([[2]], [1], EnumerationBudget(10)) == [(1,)]


def test_k3_diag():
    assert k3_pseudoeffective([[2, 0], [0, -2]], [1, 0], EnumerationBudget(10)) == [(1, -1), (1, 1)]


@pytest.mark.parametrize("G", [[[2, 1], [1, -2]], [[2, 3], [3, -2]], [[4, 1], [1, -2]], [[2, 0], [0, -4]], [[6, 0], [0, -2]]])
def test_k3_rank2_against_oracle(G):
    got = set(k3_pseudoeffective(G, (1, 0), EnumerationBudget(10)))
    assert got == _k3_oracle(G, (1, 0))


def test_k3_rank2_fixture():
    assert k3_pseudoeffective([[2, 1], [1, -2]], [1, 0], EnumerationBudget(10)) == [(0, 1), (1, -1)]
