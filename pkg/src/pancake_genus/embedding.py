"""Rotation systems, face tracing and embedding genus.

A directed edge (dart) ``x -> y`` is stored as ``x * degree + slot``.  Faces
are the orbits of ``p(x, y) = (y, p_y(x))``: leave ``y`` along the slot that
follows, in ``y``'s rotation, the slot pointing back to ``x``.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .graph import PancakeGraph
from .labeling import V1, alternating_pair
from .perm import FLIP, FLOP, GeneratorLabel, GroupParams, reversal_order


class RotationSystem:
    """Per-vertex cyclic order of adjacency slots.

    ``order[v]`` lists the slots of ``v`` in rotation order; ``succ[v, s]`` is
    the slot that follows ``s``.
    """

    def __init__(self, order):
        order = np.asarray(order, dtype=np.int64)
        if order.ndim != 2:
            raise ValueError("rotation orders must form a (vertices, degree) array")
        expected = np.arange(order.shape[1])
        if not (np.sort(order, axis=1) == expected).all():
            raise ValueError("each rotation must be a permutation of the vertex's slots")
        self.order = order
        succ = np.empty_like(order)
        rows = np.arange(order.shape[0])[:, None]
        succ[rows, order] = np.roll(order, -1, axis=1)
        self.succ = succ

    @classmethod
    def uniform(cls, vertex_count: int, cyclic_order) -> "RotationSystem":
        return cls(np.tile(np.asarray(cyclic_order, dtype=np.int64), (vertex_count, 1)))

    def __eq__(self, other):
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return self.order.shape == other.order.shape and (self.succ == other.succ).all()

    def to_json(self, g: PancakeGraph) -> dict:
        return {
            "m": g.m,
            "n": g.n,
            "rotation": {
                g.vertex_name(v): [g.labels[s].name for s in self.order[v]]
                for v in range(g.vertex_count)
            },
        }

    @classmethod
    def from_json(cls, g: PancakeGraph, data: dict) -> "RotationSystem":
        if "rotation" not in data and "witness" in data:
            data = data["witness"]  # a saved search outcome
        if "rotation" not in data:
            raise ValueError("not a rotation system document")
        if (data.get("m"), data.get("n")) != tuple(g.params):
            raise ValueError(f"rotation file is for S({data.get('m')},{data.get('n')}), not {g.name}")
        order = np.empty((g.vertex_count, g.degree), dtype=np.int64)
        seen = np.zeros(g.vertex_count, dtype=bool)
        for name, labels in data["rotation"].items():
            v = g.index(name)
            order[v] = [g.slot(lab) for lab in labels]
            seen[v] = True
        if not seen.all():
            raise ValueError("rotation file does not cover every vertex")
        return cls(order)

    def save(self, g: PancakeGraph, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(g), fh, sort_keys=True, indent=1)

    @classmethod
    def load(cls, g: PancakeGraph, path) -> "RotationSystem":
        with open(path) as fh:
            return cls.from_json(g, json.load(fh))


def construction_rotation_pn(g: PancakeGraph, labeling) -> RotationSystem:
    """``(r3, r2, r4, ..., rn)`` on V1 and ``(r2, r3, r4, ..., rn)`` on V2."""
    if g.m != 1 or g.n < 3:
        raise ValueError(f"this rotation system is for P_n with n >= 3, not {g.name}")
    return _two_class_rotation(g, labeling, v1_first=(GeneratorLabel(3), GeneratorLabel(2)))


def construction_rotation_bpn(g: PancakeGraph, labeling) -> RotationSystem:
    """``(r1, r2, r3, ..., rn)`` on V1 and ``(r2, r1, r3, ..., rn)`` on V2."""
    if g.m != 2 or g.n < 2:
        raise ValueError(f"this rotation system is for BP_n with n >= 2, not {g.name}")
    return _two_class_rotation(g, labeling, v1_first=(GeneratorLabel(1), GeneratorLabel(2)))


def _two_class_rotation(g, labeling, v1_first):
    a, b = (g.slot(x) for x in v1_first)
    rest = [s for s in range(g.degree) if s not in (a, b)]
    orders = {V1: [a, b] + rest}
    orders[1 - V1] = [b, a] + rest
    labeling = np.asarray(labeling)
    if (labeling < 0).any():
        raise ValueError("labeling is not total")
    table = np.array([orders[0], orders[1]], dtype=np.int64)
    return RotationSystem(table[labeling.astype(np.int64)])


def construction_rotation_pmn(g: PancakeGraph) -> RotationSystem:
    """``(r1~, r1, r2~, r2, ..., rn~, rn)`` at every vertex: the slot order itself."""
    if g.m < 3:
        raise ValueError(f"this rotation system is for P_m(n) with m >= 3, not {g.name}")
    return RotationSystem.uniform(g.vertex_count, range(g.degree))


def construction_rotation(g: PancakeGraph, labeling=None) -> RotationSystem:
    """The family's rotation system from the genus upper-bound constructions."""
    if g.m >= 3:
        return construction_rotation_pmn(g)
    if labeling is None:
        from .labeling import algra

        labeling = algra(g)
    if g.m == 1:
        return construction_rotation_pn(g, labeling)
    return construction_rotation_bpn(g, labeling)


def face_permutation(g: PancakeGraph, rot: RotationSystem) -> np.ndarray:
    """The successor map ``p`` as an array over dart indices."""
    d = g.degree
    heads = g.neighbors.reshape(-1)
    back = np.tile(g.reverse_slot, g.vertex_count)
    return heads * d + rot.succ[heads, back]


# -- signatures ---------------------------------------------------------------

def _key(lab: GeneratorLabel):
    # flops sort first, matching the slot order
    return (lab.index, 0 if lab.direction == FLOP else 1)


def _mirror(word, involutive: bool):
    rev = word[::-1]
    return rev if involutive else [g.inverse for g in rev]


def _min_rotation(word):
    keys = [_key(g) for g in word]
    best = min(range(len(word)), key=lambda i: keys[i:] + keys[:i])
    return word[best:] + word[:best]


def render_word(word) -> str:
    """``(a b ...)^k`` using the shortest period of the word."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[:p] * (n // p):
            return "(" + " ".join(g.name for g in word[:p]) + f")^{n // p}"
    raise AssertionError("unreachable")


def canonical_signature(word, m: int | None = None) -> str:
    """Name a boundary word up to rotation and mirror traversal.

    The mirror of a face reverses the word and, when generators are not
    involutions (m >= 3), swaps flips and flops.  With ``m`` omitted the word
    is treated as involutive unless it contains a flop.
    """
    word = [g if isinstance(g, GeneratorLabel) else GeneratorLabel.parse(g) for g in word]
    if not word:
        raise ValueError("empty word")
    involutive = (m <= 2) if m is not None else all(g.direction == FLIP for g in word)
    if involutive:
        word = [GeneratorLabel(g.index, FLIP) for g in word]
    cands = [_min_rotation(word), _min_rotation(_mirror(word, involutive))]
    best = min(cands, key=lambda w: [_key(g) for g in w])
    return render_word(best)


_TOKEN = re.compile(r"\s*(r_?\{?(\d+)\}?(~|\^\{?-1\}?)?|\(|\)|\^\{?(\d+)\}?)")


def expand_word(text: str) -> list[GeneratorLabel]:
    """Expand power notation such as ``((r3r4)^2(r2r4)^2)^2`` or ``(r1~ r2~)^2``."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        tok = mt.group(1)
        if mt.group(2):
            tokens.append(("gen", GeneratorLabel(int(mt.group(2)), FLOP if mt.group(3) else FLIP)))
        elif mt.group(4):
            tokens.append(("pow", int(mt.group(4))))
        else:
            tokens.append((tok, None))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def seq(i):
        out = []
        while i < len(tokens) and tokens[i][0] != ")":
            kind, val = tokens[i]
            if kind == "gen":
                item, i = [val], i + 1
            elif kind == "(":
                item, i = seq(i + 1)
                if i >= len(tokens) or tokens[i][0] != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                i += 1
            else:
                raise ValueError(f"unexpected token in {text!r}")
            if i < len(tokens) and tokens[i][0] == "pow":
                item = item * tokens[i][1]
                i += 1
            out.extend(item)
        return out, i

    word, i = seq(0)
    if i != len(tokens):
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return word


# -- face tracing -------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    length: int
    word: tuple[GeneratorLabel, ...]
    signature: str
    seed: tuple[int, int]  # (tail vertex, slot)


@dataclass
class FaceCensus:
    vertex_count: int
    edge_count: int
    faces: list[Face] = field(repr=False)
    face_of_dart: np.ndarray = field(repr=False)

    @property
    def region_count(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.region_count

    @property
    def embedding_genus(self) -> int:
        chi = self.euler_characteristic
        if chi % 2:
            raise ArithmeticError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def signature_counts(self) -> Counter:
        return Counter(f.signature for f in self.faces)

    def face_at(self, g: PancakeGraph, tail: int, head: int) -> Face:
        """The face containing the dart ``tail -> head``."""
        hits = np.flatnonzero(g.neighbors[tail] == head)
        if not len(hits):
            raise KeyError(f"{g.vertex_name(tail)} and {g.vertex_name(head)} are not adjacent")
        return self.faces[self.face_of_dart[tail * g.degree + int(hits[0])]]

    def to_json(self, g: PancakeGraph | None = None, seeds: bool = False) -> dict:
        counts = Counter((f.signature, f.length) for f in self.faces)
        out = {
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "regions": self.region_count,
            "genus": self.embedding_genus,
            "faces": [
                {"signature": sig, "length": length, "count": c}
                for (sig, length), c in sorted(counts.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            ],
        }
        if seeds and g is not None:
            out["face_seeds"] = [
                {
                    "edge": [g.vertex_name(f.seed[0]), g.vertex_name(int(g.neighbors[f.seed]))],
                    "word": render_word(list(f.word)),
                    "signature": f.signature,
                }
                for f in self.faces
            ]
        return out


def trace_faces(g: PancakeGraph, rot: RotationSystem) -> FaceCensus:
    """All orbits of ``p`` on the darts, seeded in (vertex, slot) order."""
    phi = face_permutation(g, rot).tolist()
    labels = g.labels
    d = g.degree
    face_of = np.full(g.dart_count, -1, dtype=np.int64)
    visited = bytearray(g.dart_count)
    faces = []
    for seed in range(g.dart_count):
        if visited[seed]:
            continue
        word = []
        x = seed
        fid = len(faces)
        while not visited[x]:
            visited[x] = 1
            face_of[x] = fid
            word.append(labels[x % d])
            x = phi[x]
        if x != seed:
            raise AssertionError("face map is not a permutation")
        faces.append(Face(len(word), tuple(word), canonical_signature(word, g.m), divmod(seed, d)))
    return FaceCensus(g.vertex_count, g.edge_count, faces, face_of)


def count_cycles(perm: np.ndarray) -> np.ndarray:
    """Number of cycles of each row of a batch of permutations.

    Pointer doubling: after ``ceil(log2(len))`` rounds every position holds the
    minimum index on its cycle, and each cycle has exactly one fixed minimum.
    """
    perm = np.atleast_2d(perm)
    n = perm.shape[1]
    dtype = np.int16 if n < 2**15 else np.int64
    perm = perm.astype(dtype)
    low = np.broadcast_to(np.arange(n, dtype=dtype), perm.shape).copy()
    span = 1
    while span < n:
        low = np.minimum(low, np.take_along_axis(low, perm, axis=1))
        perm = np.take_along_axis(perm, perm, axis=1)
        span *= 2
    return (low == np.arange(n, dtype=dtype)).sum(axis=1)


def region_count(g: PancakeGraph, rot: RotationSystem) -> int:
    return int(count_cycles(face_permutation(g, rot))[0])


def genus_from_regions(g: PancakeGraph, regions: int) -> int:
    chi = g.vertex_count - g.edge_count + regions
    if chi % 2:
        raise ArithmeticError(f"odd Euler characteristic {chi}")
    return (2 - chi) // 2


# -- guaranteed faces -----------------------------------------------------------

def count_guaranteed_faces(g: PancakeGraph) -> int:
    """Number of faces the family's rotation system provably closes.

    ``n!/6`` hexagons ``(r2 r3)^3`` in P_n, ``2^(n-3) n!`` octagons
    ``(r1 r2)^4`` in BP_n, and ``|V| * sum_i 1/o(r_i)`` single-generator faces
    in P_m(n).
    """
    m, n = g.params
    if m == 1:
        if n < 3:
            raise ValueError("P_n needs n >= 3")
        return factorial(n) // 6
    if m == 2:
        if n < 2:
            raise ValueError("BP_n needs n >= 2")
        return int(Fraction(2) ** (n - 3) * factorial(n))
    per_vertex = sum(Fraction(1, reversal_order(g.params, i)) for i in range(1, n + 1))
    return int(g.vertex_count * per_vertex)


def guaranteed_signatures(g: PancakeGraph) -> dict[str, int]:
    """Expected count for each guaranteed face signature."""
    m, n = g.params
    if m <= 2:
        a, b = alternating_pair(g)
        length = 6 if m == 1 else 8
        return {canonical_signature([a, b] * (length // 2), m): count_guaranteed_faces(g)}
    out = {}
    for i in range(1, n + 1):
        o = reversal_order(GroupParams(m, n), i)
        out[canonical_signature([GeneratorLabel(i)] * o, m)] = g.vertex_count // o
    return out
