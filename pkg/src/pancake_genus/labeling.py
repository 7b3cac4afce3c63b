"""Alternating V1/V2 vertex labelings of pancake and burnt pancake graphs.

:func:`alcyc` labels one short alternating cycle, :func:`algra` walks the base
cycle and recurses into each suffix copy until it reaches those short cycles.
A labeling is a dense ``int8`` array: 0 for V1, 1 for V2, -1 for unlabeled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import PancakeGraph
from .perm import GeneratorLabel

V1, V2 = 0, 1
UNLABELED = -1
CLASS_NAMES = {V1: "V1", V2: "V2"}


class LabelingError(ValueError):
    pass


def _words(*specs):
    return tuple(tuple(GeneratorLabel(i) for i in w) for w in specs)


@dataclass(frozen=True)
class LabelWordSet:
    even: tuple[tuple[GeneratorLabel, ...], ...]
    odd: tuple[tuple[GeneratorLabel, ...], ...]


# {(r2 r3)^i, (r3 r2)^i : i <= 1} and {(r2 r3)^i r2, (r3 r2)^i r3 : i <= 1}
PANCAKE_WORDS = LabelWordSet(
    even=_words((), (2, 3), (3, 2)),
    odd=_words((2,), (3,), (2, 3, 2), (3, 2, 3)),
)
# even words use (r1 r2)^i and (r2 r1)^i for i <= 2; r3 does not exist in BP_2
BURNT_WORDS = LabelWordSet(
    even=_words((), (1, 2), (2, 1), (1, 2, 1, 2), (2, 1, 2, 1)),
    odd=_words((2,), (1,), (2, 1, 2), (1, 2, 1)),
)


def alternating_pair(g: PancakeGraph) -> tuple[GeneratorLabel, GeneratorLabel]:
    if g.m == 1:
        return GeneratorLabel(2), GeneratorLabel(3)
    if g.m == 2:
        return GeneratorLabel(1), GeneratorLabel(2)
    raise LabelingError(f"alternating labelings are defined for P_n and BP_n, not {g.name}")


def _check_family(g: PancakeGraph):
    if not ((g.m == 1 and g.n >= 3) or (g.m == 2 and g.n >= 2)):
        raise LabelingError(f"need P_n with n >= 3 or BP_n with n >= 2, got {g.name}")


def alcyc(g: PancakeGraph, base: int, labeling: np.ndarray | None = None) -> np.ndarray:
    """Label the alternating 6-cycle (P_n) or 8-cycle (BP_n) through ``base``.

    Vertices reached from ``base`` by an even word go to V1, odd words to V2.
    Writes into ``labeling`` when given and returns it.
    """
    _check_family(g)
    words = PANCAKE_WORDS if g.m == 1 else BURNT_WORDS
    cycle_len = 6 if g.m == 1 else 8
    if labeling is None:
        labeling = np.full(g.vertex_count, UNLABELED, dtype=np.int8)
    even = {g.walk(base, w) for w in words.even}
    odd = {g.walk(base, w) for w in words.odd}
    if len(even) != cycle_len // 2 or len(odd) != cycle_len // 2 or even & odd:
        raise LabelingError(f"vertex {g.vertex_name(base)} does not sit on an alternating {cycle_len}-cycle")
    for cls, part in ((V1, even), (V2, odd)):
        for v in part:
            if labeling[v] != UNLABELED:
                raise LabelingError(f"vertex {g.vertex_name(v)} labeled twice")
            labeling[v] = cls
    return labeling


def algra(g: PancakeGraph, base: int = 0) -> np.ndarray:
    """Total V1/V2 labeling of P_n (n >= 3) or BP_n (n >= 2) grown from ``base``.

    At level ``k`` the walk ``base (r_{k-1} r_k)^i`` for ``i < k`` (P_n) or
    ``i < 2k`` (BP_n) visits one vertex in each suffix copy of the next level
    down, and each becomes the base of a recursive call.  Level 3 (P_n) or
    level 2 (BP_n) copies are single cycles handled by :func:`alcyc`.
    """
    _check_family(g)
    labeling = np.full(g.vertex_count, UNLABELED, dtype=np.int8)
    floor = 3 if g.m == 1 else 2
    stack = [(base, g.n)]
    while stack:
        v, k = stack.pop()
        if k == floor:
            alcyc(g, v, labeling)
            continue
        steps = k if g.m == 1 else 2 * k
        a, b = GeneratorLabel(k - 1), GeneratorLabel(k)
        bases = []
        for _ in range(steps):
            bases.append((v, k - 1))
            v = g.step(g.step(v, a), b)
        stack.extend(reversed(bases))
    if (labeling == UNLABELED).any():
        raise LabelingError("labeling is not total")
    return labeling


def verify_alternating(g: PancakeGraph, labeling, pair=None) -> list[tuple[int, str, int]]:
    """Edges labeled by a generator in ``pair`` whose endpoints share a class.

    Each violation is ``(u, generator name, w)`` with ``u < w``.
    """
    if pair is None:
        pair = alternating_pair(g)
    slots = sorted({g.slot(p) for p in pair})
    bad = []
    for s in slots:
        w = g.neighbors[:, s]
        u = np.arange(g.vertex_count)
        same = (labeling[u] == labeling[w]) & (u < w)
        bad.extend((int(x), g.labels[s].name, int(y)) for x, y in zip(u[same], w[same]))
    return sorted(bad)


def labeling_json(g: PancakeGraph, labeling) -> dict:
    return {g.vertex_name(v): CLASS_NAMES[int(c)] for v, c in enumerate(labeling)}
