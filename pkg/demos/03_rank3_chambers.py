"""A Picard rank 2 K3 surface: three-dimensional cones.

With Pic(S) of rank 2 the divisor space of S^[2] has dimension 3 and the
movable cone is cut into several chambers. We explore a few wall crossings
and export a planar slice for plotting elsewhere.
"""
import json
import subprocess
import sys
from pathlib import Path

from morikit import EnumerationBudget, from_k3_hilbert, mori_cone, movable_decomposition

E = from_k3_hilbert([[2, 1], [1, -2]], 2, [3, 0]).with_ample((-1, 12, 0, -1))
budget = EnumerationBudget(20)

C = mori_cone(E, budget)
print(f"Mori cone: {len(C.rays)} negative rays (complete={C.complete})")
for t in C.rays:
    print("  R =", [str(c) for c in t.R.coords], " q =", t.R.q, " height =", t.height)

D = movable_decomposition(E, budget, word_bound=2)
print(f"\n{len(D.chambers)} chambers within two wall crossings (complete={D.complete})")
for ch in D.chambers:
    flags = "".join("E" if x else "f" for x in ch.exceptional)
    print(f"  ample {ch.ample}  walls {len(ch.walls)} [{flags}]  h inside: {ch.contains_h}")
print("exceptional walls:", D.walls)

cfg = Path(__file__).with_name("configs") / "rank3_n2.json"
out = subprocess.run(
    [sys.executable, "-m", "morikit", "slice", "-c", str(cfg), "--deterministic", "--word-bound", "2"],
    capture_output=True, text=True, check=True,
).stdout
data = json.loads(out)
print("\nslice plane basis:", data["plane"]["basis"])
print("chamber vertex counts:", [len(c["vertices"]) for c in data["chambers"]])
