"""S^[2] for a K3 surface of degree 2.

Walk through the whole pipeline on the smallest interesting model: build the
algebraic Mukai lattice, enumerate the curve classes that can span extremal
rays, and read off the Mori cone, nef cone and the two birational models.
"""
from morikit import (
    H2Coordinates,
    default_budget,
    enumerate_theorem_set,
    exceptional_candidates,
    from_k3_hilbert,
    mori_cone,
    movable_decomposition,
    nef_cone,
)

# Pic(S) = Z H with H^2 = 2. The lattice basis is (r, H, s).
E = from_k3_hilbert([[2]], 2, [1])
print("v =", E.v, " v^2 =", E.v_sq, " delta =", E.delta, " delta^2 =", E.pair(E.delta, E.delta))

# H itself sits on the Hilbert-Chow wall, so polarize with 5H - delta.
E = E.with_ample((-1, 5, -1))
budget = default_budget(E)
print("ample h =", E.h, " h^2 =", E.pair(E.h, E.h), " height bound =", budget.height_bound)

coords = H2Coordinates(E)
print("H^2_alg basis:", coords.basis, " gram:", coords.gram)

print("\nNegative classes up to the height bound:")
for t in enumerate_theorem_set(E, budget):
    print(f"  a={t.a}  a^2={t.a_sq:3d}  (a,v)={t.av:2d}  R={[str(c) for c in t.R.coords]}  "
          f"q={str(t.R.q):5s}  height={t.height}")

C = mori_cone(E, budget)
print("\nMori cone rays (complete=%s):" % C.complete)
for t in C.rays:
    print("  R =", [str(c) for c in t.R.coords], " q =", t.R.q)

nef = nef_cone(E, budget)
print("\nNef cone in the (delta, H) basis: rays", nef.rational_rays(), " facets", nef.cone.facets)

print("\nExceptional divisors:", [e.coords for e in exceptional_candidates(E, budget)])

D = movable_decomposition(E, budget)
print(f"\nMovable cone: {len(D.chambers)} chambers, complete={D.complete}")
for ch in D.chambers:
    tag = "nef cone of X" if ch.contains_h else "flopped model"
    print(f"  {tag:14s} rays {ch.nef.rational_rays()}  ample {ch.ample}")
