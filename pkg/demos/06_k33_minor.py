"""Certify that P_3(2) is not planar with an explicit K_{3,3} minor.

Run: python demos/06_k33_minor.py
"""

import json

from pancake_genus.embedding import construction_rotation, trace_faces
from pancake_genus.graph import build_graph
from pancake_genus.minor import KNOWN_SEEDS, find_k33, verify_k33, witness_json

g = build_graph((3, 2))
w = find_k33(g, seeds=KNOWN_SEEDS)
print("verified:", bool(verify_k33(g, w)), " total branch-set size:", w.size)
print(json.dumps(witness_json(g, w)["side_a"], indent=1))

# Non-planar, and the construction embeds it on the torus: genus exactly 1.
print("embedding genus:", trace_faces(g, construction_rotation(g)).embedding_genus)
