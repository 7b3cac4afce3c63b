"""Look for rotation systems with more faces than the constructions.

Annealing on BP_3 quickly beats the 10-region construction.  The full
exhaustive run over the 2^24 systems of P_4 takes a few minutes on one
core, so it is only described here; see tests/data/p4_exhaustive_witness.json
or run ``pancake-genus search --family pn --n 4 --mode exhaustive``.

Run: python demos/05_rotation_search.py
"""

from pancake_genus.embedding import trace_faces
from pancake_genus.graph import build_graph
from pancake_genus.search import AnnealParams, anneal_search, space_size

bp3 = build_graph((2, 3))
print("BP_3 rotation systems:", space_size(bp3))
out = anneal_search(bp3, params=AnnealParams(restarts=4, steps=50_000, seed=0))
print(f"annealing: {out.start_regions} -> {out.regions} regions (genus <= {out.genus}) in {out.wall_clock:.1f} s")
print("best-so-far trajectory:", out.trajectory)
print("faces:", dict(trace_faces(bp3, out.rotation).signature_counts()))
