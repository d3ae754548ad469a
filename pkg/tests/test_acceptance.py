"""Acceptance criteria 1-10, each timed against its limit.

Run with pytest (a summary block lists one PASS/FAIL line per criterion) or
directly: ``python tests/test_acceptance.py``.
"""
import functools
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))

from morikit import intmath, quadric  # noqa: E402
from morikit.chambers import (  # noqa: E402
    exceptional_candidates,
    mori_cone,
    movable_decomposition,
    nef_cone,
    reflect_into_movable,
    reflection,
    reflection_fixes_complement,
)
from morikit.cones import RationalCone, dual_cone  # noqa: E402
from morikit.enumeration import (  # noqa: E402
    EnumerationBudget,
    box_oracle,
    default_budget,
    enumerate_theorem_set,
    k3_pseudoeffective,
)
from morikit.lattice import build_standard, signature  # noqa: E402
from morikit.markman import H2Coordinates, from_k3_hilbert  # noqa: E402

from conftest import FIXTURE_MODELS, hilbert  # noqa: E402

RESULTS: dict[int, str] = {}


def criterion(num, title, limit):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - t0
                assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
            except BaseException as exc:
                elapsed = time.perf_counter() - t0
                RESULTS[num] = f"FAIL  criterion {num:2d}  {title}  ({elapsed:.2f}s / {limit}s): {exc}"
                print(RESULTS[num])
                raise
            RESULTS[num] = f"PASS  criterion {num:2d}  {title}  ({elapsed:.2f}s / {limit}s)"
            print(RESULTS[num])

        return run

    return wrap


@criterion(1, "Mukai lattice constants", 1)
def test_c01_lattice_constants():
    M = build_standard("mukai")
    assert M.rank == 24
    assert M.det() == 1
    assert signature(M) == (4, 20)
    assert M.is_even


@criterion(2, "v^2 = 2n-2 and delta^2 = -2(n-1)", 1)
def test_c02_hilbert_constants():
    for pic, h in (([[2]], [1]), ([[4]], [1]), ([[2, 0], [0, -2]], [1, 0])):
        for n in range(2, 11):
            E = from_k3_hilbert(pic, n, h)
            assert E.pair(E.delta, E.v) == 0
            assert E.pair(E.delta, E.delta) == -2 * (n - 1)
            assert E.pair(E.v, E.v) == 2 * n - 2


@criterion(3, "length bound q(R) >= -(n+3)/2, attained", 10)
def test_c03_length_bound():
    witness = False
    for args in FIXTURE_MODELS.values():
        E = hilbert(*args)
        bound = Fraction(-(E.n + 3), 2)
        for t in enumerate_theorem_set(E, default_budget(E)):
            assert t.R.q >= bound, (args, t)
            if t.a_sq == -2 and abs(t.av) == E.n - 1:
                assert t.R.q == bound
                witness = True
    assert witness


@criterion(4, "enumeration = box oracle, rank 3, n in {2,3,5}", 60)
def test_c04_oracle_equivalence():
    for n, k in ((2, 5), (3, 8), (5, 20)):
        E = hilbert([[2]], n, [1], k)
        assert E.rank == 3
        B = default_budget(E).height_bound
        enum = {t.a for t in enumerate_theorem_set(E, default_budget(E)) if max(map(abs, t.a)) <= 8}
        oracle = {t.a for t in box_oracle(E, 8) if t.R.q < 0 and t.height <= B}
        assert enum == oracle, (n, enum ^ oracle)


@criterion(5, "dual(dual(C)) = C on 100 random cones", 10)
def test_c05_duality():
    rng = random.Random(5)
    for _ in range(100):
        dim = rng.randint(2, 5)
        gens = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(rng.randint(1, dim + 3))]
        C = RationalCone.from_rays(gens, dim) if rng.random() < 0.5 else RationalCone.from_facets(gens, dim)
        assert dual_cone(dual_cone(C)) == C


@criterion(6, "reflection suite on exceptional candidates", 5)
def test_c06_reflections():
    count = 0
    for args in FIXTURE_MODELS.values():
        E = hilbert(*args)
        coords = H2Coordinates(E)
        G = [list(r) for r in coords.gram]
        for e in exceptional_candidates(E, default_budget(E)):
            r = reflection(E, e)
            assert r is not None
            M = [list(row) for row in r.matrix]
            assert all(isinstance(c, int) for row in M for c in row)
            assert intmath.matmul(M, M) == intmath.identity(coords.rho)
            assert intmath.matmul(intmath.transpose(M), intmath.matmul(G, M)) == G
            assert r.apply(e.coords) == [-c for c in e.coords]
            assert reflection_fixes_complement(E, r)
            count += 1
    assert count >= 2


@criterion(7, "200 points reflect into the movable region", 10)
def test_c07_fundamental_domain():
    E = hilbert(*FIXTURE_MODELS["n2_deg2"])
    word_bound = 8
    D = movable_decomposition(E, default_budget(E), word_bound)
    G, h = D.gram, D.h
    rng = random.Random(7)
    done = 0
    while done < 200:
        x = [rng.randint(-50, 50) for _ in G]
        if not quadric.in_positive_interior(G, h, x):
            continue
        y, steps = reflect_into_movable(D, x, word_bound)
        assert steps <= word_bound and D.contains(y)
        z, again = reflect_into_movable(D, y, word_bound)
        assert again == 0 and z == y
        done += 1


@criterion(8, "nef chamber = nef cone; facets tight; (D, R) >= 0", 10)
def test_c08_nef_mori():
    E = hilbert(*FIXTURE_MODELS["n2_deg2"])
    b = default_budget(E)
    D = movable_decomposition(E, b)
    nef = nef_cone(E, b)
    start = [c for c in D.chambers if c.contains_h]
    assert len(start) == 1 and start[0].cone == nef.cone
    C = mori_cone(E, b)
    coords = H2Coordinates(E)
    Rs = [coords.to_h2(t.R) for t in C.rays]
    for f in nef.cone.facets:
        assert any(intmath.rank([f, intmath.matvec(C.gram, R)]) == 1 for R in Rs)
    for Dv in nef.rational_rays():
        for R in Rs:
            assert quadric.qform(C.gram, Dv, R) >= 0


@criterion(9, "K3 pseudoeffective baseline", 5)
def test_c09_k3():
    assert k3_pseudoeffective([[2]], [1], EnumerationBudget(10)) == [(1,)]
    assert k3_pseudoeffective([[2, 0], [0, -2]], [1, 0], EnumerationBudget(10)) == [(1, -1), (1, 1)]


@criterion(10, "morikit mori is byte-deterministic", 5)
def test_c10_determinism(tmp_path):
    cfg = tmp_path / "hilbert_n2_deg2.json"
    cfg.write_text(json.dumps({
        "model": {"k3": {"gram": [[2]], "polarization": [1], "n": 2}},
        "ample": [-1, 5, -1],
    }))
    cmd = [sys.executable, "-m", "morikit", "mori", "-c", str(cfg), "--deterministic"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a and a == b


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    failed = 0
    for t in tests:
        try:
            if t.__name__ == "test_c10_determinism":
                with tempfile.TemporaryDirectory() as d:
                    t(Path(d))
            else:
                t()
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)
