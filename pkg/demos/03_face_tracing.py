"""Trace the faces of the construction rotation systems and read off the genus.

Run: python demos/03_face_tracing.py
"""

from pancake_genus.embedding import construction_rotation, count_guaranteed_faces, trace_faces
from pancake_genus.graph import build_graph

for params in [(1, 4), (2, 3), (3, 2), (5, 2)]:
    g = build_graph(params)
    census = trace_faces(g, construction_rotation(g))
    print(f"\n{g.name}: {census.region_count} regions, genus {census.embedding_genus}, "
          f"{count_guaranteed_faces(g)} guaranteed by construction")
    for sig, k in sorted(census.signature_counts().items(), key=lambda kv: (-kv[1], kv[0])):
        print(f"  {k:3d} x {sig}")

# One seed dart per face, as in a printed region table.
p4 = build_graph((1, 4))
for row in trace_faces(p4, construction_rotation(p4)).to_json(p4, seeds=True)["face_seeds"]:
    print(" ", row["edge"], row["word"])
