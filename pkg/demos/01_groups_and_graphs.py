"""Signed permutations, prefix reversals and the three graph families.

Run: python demos/01_groups_and_graphs.py
"""

from pancake_genus.graph import base_cycle, build_graph, copies, girth
from pancake_genus.perm import GroupParams, apply_flip, apply_flop, format_element, identity, reversal_order

# A flip reverses a prefix and bumps each sign in it by one (mod m).
e = identity(GroupParams(2, 3))
print("burnt pancake identity:", format_element(e))
print("flip of the first two :", format_element(apply_flip(e, 2)))

# With m = 3 flips and flops differ, and r1 has order m while r_i (i >= 2) has order 2m for odd m.
g3 = GroupParams(3, 2)
x = identity(g3)
print("flip 1 on 1^0 2^0:", format_element(apply_flip(x, 1)), "  flop:", format_element(apply_flop(x, 1)))
print("orders:", [reversal_order(g3, i) for i in (1, 2)])

# Materialize the graphs.  Vertices are dense integer ranks; slots are generator labels.
for params in [(1, 4), (2, 3), (3, 2)]:
    g = build_graph(params)
    print(f"{g.name:7s} V={g.vertex_count:3d} E={g.edge_count:3d} degree={g.degree} girth={girth(g)}")

# P_4 splits into four copies of P_3 (hexagons); the base cycle crosses each copy once.
p4 = build_graph((1, 4))
print("copies of P_3 in P_4:", [len(c.members) for c in copies(p4, 1)])
print("base cycle:", " ".join(p4.vertex_name(v) for v in base_cycle(p4)))
