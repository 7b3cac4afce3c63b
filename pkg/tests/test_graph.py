import networkx as nx
import numpy as np
import pytest

from pancake_genus.graph import (
    DOT_VERTEX_LIMIT,
    OverBudgetError,
    base_cycle,
    build_graph,
    copies,
    copy_isomorphism,
    copy_slots,
    girth,
    pancake,
)
from pancake_genus.perm import GeneratorLabel, GroupParams, apply_flip, apply_flop, elements, rank


@pytest.mark.parametrize(
    "m,n,v,e,d",
    [(1, 4, 24, 36, 3), (2, 3, 48, 72, 3), (3, 2, 18, 36, 4), (1, 2, 2, 1, 1), (4, 1, 4, 4, 2), (5, 3, 750, 2250, 6)],
)
def test_sizes(m, n, v, e, d):
    g = build_graph((m, n))
    assert (g.vertex_count, g.edge_count, g.degree) == (v, e, d)
    assert g.neighbors.shape == (v, d)


def test_edge_count_formulas():
    from math import factorial

    for n in range(3, 7):
        assert pancake(n).edge_count == (n - 1) * factorial(n) // 2
    for n in range(2, 5):
        assert build_graph((2, n)).edge_count == 2 ** (n - 1) * factorial(n) * n
    for m, n in [(3, 2), (3, 3), (4, 3)]:
        assert build_graph((m, n)).edge_count == m**n * factorial(n) * n


@pytest.mark.parametrize("m,n", [(1, 3), (1, 5), (2, 2), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2), (7, 2)])
def test_adjacency_matches_group_action(m, n):
    g = build_graph((m, n))
    params = GroupParams(m, n)
    for v in elements(params):
        k = rank(v)
        for s, lab in enumerate(g.labels):
            op = apply_flip if lab.direction == 1 else apply_flop
            assert g.neighbors[k, s] == rank(op(v, lab.index))


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3), (3, 2), (3, 3), (4, 3), (5, 2), (6, 3), (8, 2)])
def test_label_symmetry_and_simplicity(m, n):
    g = build_graph((m, n))
    idx = np.arange(g.vertex_count)
    for s in range(g.degree):
        back = g.neighbors[g.neighbors[:, s], g.reverse_slot[s]]
        assert (back == idx).all()
    assert (g.neighbors != idx[:, None]).all()
    srt = np.sort(g.neighbors, axis=1)
    assert (srt[:, 1:] != srt[:, :-1]).all()
    # handshake
    assert g.degree * g.vertex_count == 2 * g.edge_count


def test_reverse_slot_pairs_flip_with_flop():
    g = build_graph((3, 2))
    for s, lab in enumerate(g.labels):
        assert g.labels[g.reverse_slot[s]] == lab.inverse
    b = build_graph((2, 3))
    assert list(b.reverse_slot) == [0, 1, 2]


def test_girth_examples():
    assert girth(pancake(4)) == 6
    assert girth(build_graph((2, 3))) == 8
    assert girth(build_graph((3, 2))) == 3
    assert girth(build_graph((7, 2))) == 6


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3), (3, 2), (4, 2), (5, 2), (4, 3)])
def test_girth_matches_networkx(m, n):
    g = build_graph((m, n))
    assert girth(g) == nx.girth(g.to_networkx())


def test_girth_any_root_agrees():
    g = build_graph((2, 3))
    assert {girth(g, r) for r in range(0, g.vertex_count, 7)} == {8}


def test_copies_partition_and_isomorphism():
    g = pancake(4)
    parts = copies(g, 1)
    assert len(parts) == 4
    small = pancake(3)
    keep = copy_slots(g, 1)
    for part in parts:
        members = set(int(v) for v in part.members)
        assert len(members) == 6
        sub = g.to_networkx().subgraph(members)
        assert nx.is_isomorphic(sub, nx.cycle_graph(6))
        iso = copy_isomorphism(g, part, small)
        assert sorted(iso.values()) == list(range(small.vertex_count))
        for v in members:
            for s in keep:
                w = int(g.neighbors[v, s])
                assert w in members
                assert iso[w] == small.neighbors[iso[v], small.slot(g.labels[s])]
    total = np.concatenate([p.members for p in parts])
    assert sorted(total.tolist()) == list(range(g.vertex_count))


def test_copies_burnt():
    g = build_graph((2, 3))
    parts = copies(g, 1)
    assert len(parts) == 6
    for part in parts:
        sub = g.to_networkx().subgraph(int(v) for v in part.members)
        assert nx.is_isomorphic(sub, nx.cycle_graph(8))


def test_copies_generalized_and_trivial():
    g = build_graph((3, 3))
    small = build_graph((3, 2))
    parts = copies(g, 1)
    assert len(parts) == 9
    sub = g.to_networkx().subgraph(int(v) for v in parts[4].members)
    assert nx.is_isomorphic(sub, small.to_networkx())
    whole = copies(g, 0)
    assert len(whole) == 1 and len(whole[0].members) == g.vertex_count
    with pytest.raises(ValueError):
        copies(g, 3)


def test_base_cycle_examples():
    g = pancake(4)
    cyc = base_cycle(g)
    assert len(cyc) == 8 and cyc[0] == g.index("1234")
    b = build_graph((2, 3))
    assert len(base_cycle(b)) == 12
    p3 = pancake(3)
    assert sorted(base_cycle(p3)) == list(range(6))
    with pytest.raises(ValueError):
        base_cycle(build_graph((3, 2)))


@pytest.mark.parametrize("m,n", [(1, 4), (1, 5), (1, 6), (2, 3), (2, 4)])
def test_base_cycle_one_edge_per_copy(m, n):
    g = build_graph((m, n))
    cyc = base_cycle(g)
    owner = np.empty(g.vertex_count, dtype=np.int64)
    parts = copies(g, 1)
    for c, part in enumerate(parts):
        owner[part.members] = c
    hits = [0] * len(parts)
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if owner[a] == owner[b]:
            hits[owner[a]] += 1
    assert hits == [1] * len(parts)


def test_over_budget(monkeypatch):
    monkeypatch.setenv("PANCAKE_GENUS_MEMORY_BUDGET", "1000")
    with pytest.raises(OverBudgetError):
        pancake(5)


def test_p10_fits_default_budget():
    from pancake_genus.graph import estimated_bytes, memory_budget

    assert estimated_bytes(GroupParams(1, 10)) <= memory_budget()
    assert estimated_bytes(GroupParams(2, 7)) <= memory_budget()
    assert estimated_bytes(GroupParams(1, 12)) > memory_budget()


def test_dot_and_json_exports():
    g = build_graph((3, 2))
    dot = g.to_dot()
    assert dot.count("[label=") == 18 + 36
    assert 'label="r1~"' in dot
    adj = g.adjacency_json()
    assert len(adj) == 18 and adj["1^0 2^0"][1] == ["r1", "1^1 2^0"]
    with pytest.raises(OverBudgetError):
        pancake(6).to_dot()
    assert pancake(5).vertex_count <= DOT_VERTEX_LIMIT


def test_walk_and_step():
    g = pancake(4)
    e = g.index("1234")
    assert g.vertex_name(g.step(e, "r3")) == "3214"
    assert g.walk(e, [GeneratorLabel(2), GeneratorLabel(3)] * 3) == e
