"""K_{3,3} minor witnesses: checkable non-planarity certificates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import PancakeGraph

# The six vertices of P_3(2) named as the two independent sets of the minor
KNOWN_SEEDS = (("1^0 2^0", "2^2 1^1", "1^1 2^1"), ("1^2 2^0", "2^1 1^1", "2^2 1^2"))
DEFAULT_NODE_BUDGET = 2_000_000


class MinorSearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class MinorWitness:
    side_a: tuple[frozenset, frozenset, frozenset]
    side_b: tuple[frozenset, frozenset, frozenset]

    @property
    def branch_sets(self):
        return self.side_a + self.side_b

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.branch_sets)


@dataclass
class MinorCheck:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _adjacent_sets(g: PancakeGraph, s: frozenset, t: frozenset):
    for u in s:
        for w in g.neighbors[u]:
            if int(w) in t:
                return (u, int(w))
    return None


def _spanning_tree(g: PancakeGraph, s: frozenset):
    """BFS tree edges of the subgraph induced by ``s``, or None if disconnected."""
    root = min(s)
    seen = {root}
    tree = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            w = int(w)
            if w in s and w not in seen:
                seen.add(w)
                tree.append((u, w))
                queue.append(w)
    return tree if len(seen) == len(s) else None


def verify_k33(g: PancakeGraph, w: MinorWitness) -> MinorCheck:
    """Check disjointness, connectivity and the nine cross adjacencies."""
    problems = []
    sets = w.branch_sets
    if len(w.side_a) != 3 or len(w.side_b) != 3:
        return MinorCheck(False, ["need three branch sets per side"])
    for i, s in enumerate(sets):
        if not s:
            problems.append(f"branch set {i} is empty")
        for v in s:
            if not 0 <= v < g.vertex_count:
                raise IndexError(f"vertex {v} out of range")
    for i in range(6):
        for j in range(i + 1, 6):
            common = sets[i] & sets[j]
            if common:
                problems.append(f"overlap: branch sets {i} and {j} share {sorted(common)}")
    for i, s in enumerate(sets):
        if s and _spanning_tree(g, s) is None:
            problems.append(f"disconnected: branch set {i} does not induce a connected subgraph")
    for i, s in enumerate(w.side_a):
        for j, t in enumerate(w.side_b):
            if _adjacent_sets(g, s, t) is None:
                problems.append(f"missing cross edge: A{i} -- B{j}")
    return MinorCheck(not problems, problems)


def witness_json(g: PancakeGraph, w: MinorWitness) -> dict:
    name = g.vertex_name

    def branch(s):
        return {
            "vertices": sorted(name(v) for v in s),
            "spanning_tree": [[name(a), name(b)] for a, b in _spanning_tree(g, s) or []],
        }

    cross = []
    for i, s in enumerate(w.side_a):
        for j, t in enumerate(w.side_b):
            e = _adjacent_sets(g, s, t)
            cross.append({"pair": [f"A{i}", f"B{j}"], "edge": None if e is None else [name(e[0]), name(e[1])]})
    return {
        "graph": g.name,
        "side_a": [branch(s) for s in w.side_a],
        "side_b": [branch(s) for s in w.side_b],
        "cross_edges": cross,
        "total_size": w.size,
        "verified": bool(verify_k33(g, w)),
    }


def find_k33(g: PancakeGraph, seeds=None, node_budget: int = DEFAULT_NODE_BUDGET) -> MinorWitness:
    """Grow six branch sets from seed vertices until they form a K_{3,3} minor.

    Iterative deepening over the number of vertices added, so the first
    witness found has minimum total size for these seeds.  Each step extends
    one side of the first unjoined cross pair by an unassigned neighbor,
    which keeps every branch set connected.  Without ``seeds``, the six
    named vertices of P_3(2) are tried (when they exist in ``g``), then
    deterministic random seed sets.
    """
    if seeds is not None:
        return _grow(g, _resolve(g, seeds), node_budget)
    attempts = []
    try:
        attempts.append(_resolve(g, KNOWN_SEEDS))
    except (ValueError, KeyError):
        pass
    rng = np.random.default_rng(0)
    for _ in range(20):
        if g.vertex_count < 6:
            break
        pick = [int(x) for x in rng.choice(g.vertex_count, size=6, replace=False)]
        attempts.append((tuple(pick[:3]), tuple(pick[3:])))
    for seeds in attempts:
        try:
            return _grow(g, seeds, node_budget)
        except MinorSearchExhausted:
            continue
    raise MinorSearchExhausted(f"no K_3,3 minor found in {g.name} from {len(attempts)} seed choices")


def _resolve(g, seeds):
    a, b = seeds
    conv = [g.index(v) if isinstance(v, str) else int(v) for v in (*a, *b)]
    if len(conv) != 6 or len(set(conv)) != 6:
        raise ValueError("need six distinct seed vertices, three per side")
    return tuple(conv[:3]), tuple(conv[3:])


def _grow(g: PancakeGraph, seeds, node_budget: int) -> MinorWitness:
    owner = np.full(g.vertex_count, -1, dtype=np.int64)
    for i, v in enumerate((*seeds[0], *seeds[1])):
        owner[v] = i
    nbr = g.neighbors.tolist()
    owner = owner.tolist()
    nodes = 0

    def joined(a, b):
        for u, o in enumerate(owner):
            if o == a and any(owner[w] == b for w in nbr[u]):
                return True
        return False

    def first_open():
        for a in range(3):
            for b in range(3, 6):
                if not joined(a, b):
                    return a, b
        return None

    def frontier(c):
        out = set()
        for u, o in enumerate(owner):
            if o == c:
                out.update(w for w in nbr[u] if owner[w] == -1)
        return sorted(out)

    def dfs(extra, seen):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise MinorSearchExhausted(f"node budget {node_budget} exhausted")
        pair = first_open()
        if pair is None:
            return True
        if extra == 0:
            return False
        key = tuple(owner)
        if key in seen:
            return False
        seen.add(key)
        for c in pair:
            for u in frontier(c):
                owner[u] = c
                if dfs(extra - 1, seen):
                    return True
                owner[u] = -1
        return False

    free = g.vertex_count - 6
    for extra in range(free + 1):
        if dfs(extra, set()):
            sets = [frozenset(u for u, o in enumerate(owner) if o == c) for c in range(6)]
            w = MinorWitness(tuple(sets[:3]), tuple(sets[3:]))
            check = verify_k33(g, w)
            if not check:
                raise AssertionError(f"grown witness failed verification: {check.problems}")
            return w
    raise MinorSearchExhausted(f"no K_3,3 minor grows from these seeds in {g.name}")
