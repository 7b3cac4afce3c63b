"""Dense Cayley graphs of S(m, n) under prefix reversals.

Vertices are the dense ranks from :mod:`pancake_genus.perm`.  Every vertex has
the same ordered list of adjacency slots, one per generator label (see
:func:`pancake_genus.perm.generators`), so a directed edge is a
``(vertex, slot)`` pair and its reverse lives in a slot that depends only on
the label.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from math import factorial

import numpy as np

from .perm import (
    FLIP,
    GeneratorLabel,
    GroupParams,
    SignedPermutation,
    format_element,
    generators,
    identity,
    parse_element,
    rank,
)

DEFAULT_MEMORY_BUDGET = 2 * 1024**3
BUDGET_ENV = "PANCAKE_GENUS_MEMORY_BUDGET"
DOT_VERTEX_LIMIT = 200


class OverBudgetError(RuntimeError):
    """Raised when an instance is too large to materialize."""


def memory_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_MEMORY_BUDGET))


def degree_of(params: GroupParams) -> int:
    return len(generators(params))


def estimated_bytes(params: GroupParams) -> int:
    # neighbor table (int64) plus symbol/sign tables and construction temporaries
    v, d, n = params.order, degree_of(params), params.n
    return v * (8 * d + 2 * n) * 3


def _sign_table(m: int, n: int) -> np.ndarray:
    s = np.arange(m**n, dtype=np.int64)
    return np.stack([(s // m**j) % m for j in range(n)], axis=1).astype(np.int8)


def _vertex_tables(params: GroupParams) -> tuple[np.ndarray, np.ndarray]:
    m, n = params
    perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8).reshape(-1, n)
    symbols = np.repeat(perms, m**n, axis=0)
    signs = np.tile(_sign_table(m, n), (factorial(n), 1))
    return symbols, signs


def rank_array(symbols: np.ndarray, signs: np.ndarray, m: int) -> np.ndarray:
    """Vectorized :func:`pancake_genus.perm.rank` over rows."""
    n = symbols.shape[1]
    perm_rank = np.zeros(len(symbols), dtype=np.int64)
    for j in range(n):
        smaller = (symbols[:, j + 1:] < symbols[:, j:j + 1]).sum(axis=1)
        perm_rank += smaller * factorial(n - 1 - j)
    sign_rank = np.zeros(len(symbols), dtype=np.int64)
    for j in range(n):
        sign_rank += signs[:, j].astype(np.int64) * m**j
    return perm_rank * m**n + sign_rank


def _reverse_rows(symbols, signs, i, delta, m):
    sym = symbols.copy()
    sg = signs.copy()
    sym[:, :i] = symbols[:, i - 1::-1]
    sg[:, :i] = (signs[:, i - 1::-1].astype(np.int16) + delta) % m
    return sym, sg


@dataclass(eq=False)
class PancakeGraph:
    """Fully materialized undirected Cayley graph of S(m, n).

    ``neighbors[v, s]`` is the vertex reached from ``v`` along slot ``s``,
    whose generator is ``labels[s]``.  ``reverse_slot[s]`` is the slot at the
    neighbor that leads back.
    """

    params: GroupParams
    symbols: np.ndarray
    signs: np.ndarray
    neighbors: np.ndarray
    labels: tuple[GeneratorLabel, ...]
    reverse_slot: np.ndarray

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def family(self) -> str:
        return self.params.family

    @property
    def vertex_count(self) -> int:
        return self.neighbors.shape[0]

    @property
    def degree(self) -> int:
        return self.neighbors.shape[1]

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.degree // 2

    @property
    def dart_count(self) -> int:
        return self.vertex_count * self.degree

    @property
    def name(self) -> str:
        m, n = self.params
        return {"pn": f"P_{n}", "bpn": f"BP_{n}"}.get(self.family, f"P_{m}({n})")

    def vertex(self, k: int) -> SignedPermutation:
        return SignedPermutation(
            tuple(int(x) for x in self.symbols[k]), tuple(int(x) for x in self.signs[k]), self.m
        )

    def index(self, v) -> int:
        if isinstance(v, str):
            v = parse_element(v, self.m)
        if v.params != self.params:
            raise ValueError(f"{v} is not an element of S{tuple(self.params)}")
        return rank(v)

    def vertex_name(self, k: int) -> str:
        return format_element(self.vertex(k))

    def slot(self, label: GeneratorLabel | str) -> int:
        if isinstance(label, str):
            label = GeneratorLabel.parse(label)
        if self.m <= 2:
            label = GeneratorLabel(label.index, FLIP)
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label} is not a generator of {self.name}") from None

    def step(self, v: int, label) -> int:
        return int(self.neighbors[v, self.slot(label)])

    def walk(self, v: int, word) -> int:
        for g in word:
            v = self.step(v, g)
        return v

    def edges(self):
        """Undirected edges as ``(u, slot, w)`` with ``u < w``."""
        for u in range(self.vertex_count):
            for s in range(self.degree):
                w = int(self.neighbors[u, s])
                if u < w:
                    yield u, s, w

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        for u, s, w in self.edges():
            g.add_edge(u, w, label=self.labels[s].name)
        return g

    def to_dot(self, labeling=None) -> str:
        """Graphviz source; edges carry generator names.  With a labeling,
        V1 vertices are boxes and V2 vertices ellipses."""
        if self.vertex_count > DOT_VERTEX_LIMIT:
            raise OverBudgetError(f"DOT export is limited to {DOT_VERTEX_LIMIT} vertices")
        lines = [f'graph "{self.name}" {{']
        for v in range(self.vertex_count):
            attrs = f'label="{self.vertex_name(v)}"'
            if labeling is not None:
                attrs += ", shape=" + ("box" if labeling[v] == 0 else "ellipse")
            lines.append(f"  v{v} [{attrs}];")
        for u, s, w in self.edges():
            # orient the label from the lower-indexed endpoint
            lines.append(f'  v{u} -- v{w} [label="{self.labels[s].name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def adjacency_json(self) -> dict:
        return {
            self.vertex_name(v): [
                [self.labels[s].name, self.vertex_name(int(self.neighbors[v, s]))]
                for s in range(self.degree)
            ]
            for v in range(self.vertex_count)
        }


def build_graph(params) -> PancakeGraph:
    params = GroupParams(*params).check()
    if estimated_bytes(params) > memory_budget():
        raise OverBudgetError(
            f"S{tuple(params)} has {params.order} vertices; estimated "
            f"{estimated_bytes(params)} bytes exceeds the budget {memory_budget()}"
        )
    m, n = params
    labels = generators(params)
    symbols, signs = _vertex_tables(params)
    neighbors = np.empty((len(symbols), len(labels)), dtype=np.int64)
    for s, g in enumerate(labels):
        sym, sg = _reverse_rows(symbols, signs, g.index, g.direction, m)
        neighbors[:, s] = rank_array(sym, sg, m)
    reverse_slot = np.array([labels.index(g.inverse) if m > 2 else s for s, g in enumerate(labels)],
                            dtype=np.int64)
    return PancakeGraph(params, symbols, signs, neighbors, labels, reverse_slot)


def pancake(n: int) -> PancakeGraph:
    return build_graph((1, n))


def burnt_pancake(n: int) -> PancakeGraph:
    return build_graph((2, n))


def generalized_pancake(m: int, n: int) -> PancakeGraph:
    return build_graph((m, n))


def girth(g: PancakeGraph, root: int = 0) -> int | None:
    """Length of a shortest cycle, by BFS from ``root`` alone.

    Every non-tree edge ``{u, w}`` closes a walk of length
    ``dist[u] + dist[w] + 1`` through the root, which contains a cycle at most
    that long; a shortest cycle through the root produces such an edge.  In a
    vertex-transitive graph some shortest cycle passes through every vertex,
    so the minimum is the girth.  Returns ``None`` for forests.
    """
    dist = np.full(g.vertex_count, -1, dtype=np.int64)
    parent = np.full(g.vertex_count, -1, dtype=np.int64)
    dist[root] = 0
    queue = deque([root])
    best = None
    while queue:
        u = queue.popleft()
        if best is not None and 2 * dist[u] + 1 >= best:
            break
        for w in g.neighbors[u]:
            w = int(w)
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif w != parent[u]:
                cand = int(dist[u] + dist[w] + 1)
                if best is None or cand < best:
                    best = cand
    return best


@dataclass(frozen=True)
class CopyDescriptor:
    suffix: tuple[tuple[int, int], ...]
    members: np.ndarray


def copies(g: PancakeGraph, suffix_length: int) -> list[CopyDescriptor]:
    """Partition the vertices by their last ``suffix_length`` signed symbols.

    Each part induces a copy of P(m, n - suffix_length).
    """
    if not 0 <= suffix_length < g.n:
        raise ValueError(f"suffix length must be in 0..{g.n - 1}")
    if suffix_length == 0:
        return [CopyDescriptor((), np.arange(g.vertex_count))]
    key_sym = g.symbols[:, g.n - suffix_length:]
    key_sign = g.signs[:, g.n - suffix_length:]
    keys = np.concatenate([key_sym, key_sign], axis=1)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    out = []
    for c, key in enumerate(uniq):
        suffix = tuple(zip((int(x) for x in key[:suffix_length]), (int(x) for x in key[suffix_length:])))
        out.append(CopyDescriptor(suffix, order[bounds[c]:bounds[c + 1]]))
    return out


def copy_slots(g: PancakeGraph, suffix_length: int) -> list[int]:
    """Slots whose generator stays inside a suffix copy (index <= n - suffix_length)."""
    return [s for s, lab in enumerate(g.labels) if lab.index <= g.n - suffix_length]


def copy_isomorphism(g: PancakeGraph, part: CopyDescriptor, small: PancakeGraph) -> dict[int, int]:
    """Explicit map from a suffix copy onto the smaller graph ``small``.

    Drop the suffix and relabel the remaining symbols order-preservingly to
    ``1..k``; the map commutes with every generator of index ``<= k``.
    """
    k = small.n
    mapping = {}
    for v in part.members:
        v = int(v)
        prefix = g.symbols[v, :k]
        relabel = np.argsort(np.argsort(prefix)) + 1
        w = SignedPermutation(tuple(int(x) for x in relabel), tuple(int(x) for x in g.signs[v, :k]), g.m)
        mapping[v] = rank(w)
    return mapping


def base_cycle(g: PancakeGraph, start: int | None = None) -> list[int]:
    """The closed walk ``(r_{n-1} r_n)^n`` (pancake) or ``^(2n)`` (burnt pancake).

    Returns the vertices in walk order, without repeating the start.
    """
    m, n = g.params
    if not ((m == 1 and n > 2) or (m == 2 and n > 1)):
        raise ValueError(f"base cycles are defined for P_n (n > 2) and BP_n (n > 1), not {g.name}")
    v = 0 if start is None else start
    length = 2 * n if m == 1 else 4 * n
    pair = (GeneratorLabel(n - 1), GeneratorLabel(n))
    walk = [v]
    for step in range(length):
        v = g.step(v, pair[step % 2])
        walk.append(v)
    if walk[-1] != walk[0] or len(set(walk[:-1])) != length:
        raise RuntimeError(f"base cycle of {g.name} failed to close as a simple cycle")
    return walk[:-1]
