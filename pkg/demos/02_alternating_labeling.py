"""Two-colouring P_n and BP_n so the short cycles alternate.

Run: python demos/02_alternating_labeling.py
"""

from pancake_genus.graph import build_graph
from pancake_genus.labeling import V1, algra, verify_alternating

p4 = build_graph((1, 4))
lab = algra(p4, p4.index("1234"))
print("V1 in P_4:", sorted(p4.vertex_name(v) for v in range(p4.vertex_count) if lab[v] == V1))
print("violations on r2/r3 edges:", verify_alternating(p4, lab))

# Larger instances: the labeling stays total, balanced and alternating.
for params in [(1, 7), (2, 5)]:
    g = build_graph(params)
    lab = algra(g)
    print(f"{g.name}: |V1|={int((lab == 0).sum())} |V2|={int((lab == 1).sum())} "
          f"violations={len(verify_alternating(g, lab))}")

# Flip one vertex and the check points straight at its two pair edges.
bad = lab.copy()
bad[10] ^= 1
print("after flipping vertex 10:", verify_alternating(g, bad))
