"""Cross-check the lattice search against brute force.

The short-vector search should find exactly the classes a naive scan of a
coefficient box finds, wherever both look.
"""
import time

from morikit import box_oracle, default_budget, enumerate_theorem_set, from_k3_hilbert

COEFF = 8

for n, k in [(2, 5), (3, 8), (5, 20), (7, 30)]:
    E = from_k3_hilbert([[2]], n, [1])
    E = E.with_ample(tuple(k * x - d for x, d in zip(E.h, E.delta)))
    B = default_budget(E)

    t0 = time.perf_counter()
    found = enumerate_theorem_set(E, B)
    t_search = time.perf_counter() - t0

    t0 = time.perf_counter()
    oracle = {t.a for t in box_oracle(E, COEFF) if t.R.q < 0 and t.height <= B.height_bound}
    t_box = time.perf_counter() - t0

    inside = {t.a for t in found if max(map(abs, t.a)) <= COEFF}
    worst = min(t.R.q for t in found)
    print(f"n={n}: {len(found):3d} classes ({t_search:.3f}s), box agrees: {inside == oracle} "
          f"({t_box:.3f}s); min q = {worst} >= {-(n + 3)}/2")
