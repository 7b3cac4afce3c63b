import json

import numpy as np
import pytest

from pancake_genus.embedding import RotationSystem, construction_rotation, trace_faces
from pancake_genus.graph import build_graph, pancake
from pancake_genus.search import (
    AnnealParams,
    SearchBudgetError,
    _decode,
    _scan_block,
    anneal_search,
    cyclic_orders,
    exhaustive_search,
    order_tables,
    space_size,
)

from conftest import DATA


def test_cyclic_orders():
    assert cyclic_orders(3) == [(0, 1, 2), (0, 2, 1)]
    assert len(cyclic_orders(4)) == 6
    assert cyclic_orders(2) == [(0, 1)]
    orders, succ = order_tables(3)
    assert succ.tolist() == [[1, 2, 0], [2, 0, 1]]


def test_space_sizes():
    assert space_size(pancake(4)) == 2**24
    assert space_size(build_graph((2, 3))) == 2**48
    assert space_size(pancake(3)) == 1


def test_exhaustive_cycle_graph():
    out = exhaustive_search(pancake(3))
    assert out.regions == 2 and out.genus == 0 and out.complete and out.examined == 1


def test_exhaustive_refuses_bp3():
    with pytest.raises(SearchBudgetError) as err:
        exhaustive_search(build_graph((2, 3)))
    assert err.value.space == 2**48


def test_scan_block_matches_full_traces():
    g = pancake(4)
    lo, hi = 3_000_000, 3_000_000 + 3000
    best, best_k, _ = _scan_block((g, lo, hi))
    counts = [trace_faces(g, _decode(g, k, 2)).region_count for k in range(lo, hi)]
    assert best == max(counts)
    assert best_k == lo + counts.index(best)


def test_scan_block_spot_checks():
    g = pancake(4)
    _, _, checks = _scan_block((g, 0, 20_001))
    assert checks == 3


def test_p4_exhaustive_witness_reloads():
    g = pancake(4)
    data = json.loads((DATA / "p4_exhaustive_witness.json").read_text())
    assert data["complete"] and data["examined"] == 2**24
    rot = RotationSystem.from_json(g, data["witness"])
    c = trace_faces(g, rot)
    assert c.region_count == data["regions"] == 10
    assert c.embedding_genus == data["genus"] == 2


def test_bp3_anneal_witness_reloads():
    g = build_graph((2, 3))
    data = json.loads((DATA / "bp3_anneal_witness.json").read_text())
    assert not data["complete"] and "genus" not in data
    c = trace_faces(g, RotationSystem.from_json(g, data["witness"]))
    assert c.region_count == 18 and c.embedding_genus == data["genus_upper_bound"] == 4
    assert set(f.length for f in c.faces) == {8}


def test_anneal_zero_steps():
    g = build_graph((2, 3))
    rot0 = construction_rotation(g)
    out = anneal_search(g, rot0, AnnealParams(restarts=2, steps=0))
    assert out.regions == 10 and out.rotation == rot0 and out.examined == 0


def test_anneal_never_worse_and_monotone():
    g = build_graph((3, 2))
    out = anneal_search(g, params=AnnealParams(restarts=2, steps=3000, seed=5))
    assert out.regions >= 18 and out.genus <= 1
    assert out.start_regions == 18
    assert out.trajectory == sorted(out.trajectory)
    assert trace_faces(g, out.rotation).region_count == out.regions


def test_anneal_reproducible_and_worker_independent():
    g = build_graph((2, 3))
    params = AnnealParams(restarts=3, steps=4000, seed=11)
    a = anneal_search(g, params=params)
    b = anneal_search(g, params=params)
    c = anneal_search(g, params=params, workers=2)
    assert a.regions == b.regions == c.regions
    assert a.rotation == b.rotation == c.rotation
    assert a.to_json(g) == c.to_json(g)


def test_anneal_improves_bp3():
    g = build_graph((2, 3))
    out = anneal_search(g, params=AnnealParams(restarts=1, steps=20_000, seed=0))
    assert out.regions > 10


def test_outcome_json_labels_heuristic_genus():
    g = build_graph((3, 2))
    out = anneal_search(g, params=AnnealParams(restarts=1, steps=100))
    js = out.to_json(g)
    assert "genus_upper_bound" in js and "genus" not in js
    ex = exhaustive_search(pancake(3)).to_json(pancake(3))
    assert ex["genus"] == 0


def test_local_tracer_delta_matches_recount():
    from pancake_genus.embedding import count_cycles
    from pancake_genus.search import _LocalTracer

    g = build_graph((3, 2))
    rng = np.random.default_rng(3)
    orders, succ = order_tables(g.degree)
    state = rng.integers(len(orders), size=g.vertex_count)
    tracer = _LocalTracer(g, RotationSystem(orders[state]))
    regions = int(count_cycles(np.array(tracer.phi))[0])
    for _ in range(200):
        v = int(rng.integers(g.vertex_count))
        new = int(rng.integers(len(orders)))
        before = tracer.faces_through(v)
        tracer.set_rotation(v, succ[new].tolist())
        regions += tracer.faces_through(v) - before
        state[v] = new
        assert regions == trace_faces(g, RotationSystem(orders[state])).region_count
