# src/minorkit/core/canonical.py

"""Canonical labelling by colour refinement and individualisation.

The canonical labelling of a graph is the leaf of the search tree whose
upper-triangle adjacency bits, read row by row, form the smallest integer.
Automorphisms discovered along the way prune sibling subtrees that lie in
the same orbit of the pointwise stabiliser of the current path.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .graph import Graph

logger = logging.getLogger(__name__)

Key = Tuple[int, Tuple[int, ...], int]


@dataclass(frozen=True)
class CanonicalCode:
    data: bytes
    orbit_count: int

    def hex(self) -> str:
        return self.data.hex()

    def __lt__(self, other: "CanonicalCode") -> bool:
        return self.data < other.data


@dataclass(frozen=True)
class CanonicalLabeling:
    order: Tuple[int, ...]          # order[i] is the vertex placed at position i
    colors: Tuple[int, ...]         # colour of the vertex at each position
    bits: int                       # upper-triangle adjacency bits of the relabelled graph
    generators: Tuple[Tuple[int, ...], ...]

    @property
    def key(self) -> Key:
        return (len(self.order), self.colors, self.bits)

    def position(self) -> List[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def orbits(self) -> List[List[int]]:
        return _orbits(len(self.order), self.generators)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _refine(masks: Sequence[int], cells: List[List[int]]) -> List[List[int]]:
    """Split cells until every vertex of a cell sees the same number of neighbours in each cell."""
    while True:
        cell_masks = []
        for cell in cells:
            cm = 0
            for v in cell:
                cm |= 1 << v
            cell_masks.append(cm)
        split = False
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple(_popcount(masks[v] & cm) for cm in cell_masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(cell)
                continue
            split = True
            for k in keys:
                out.append([v for v in cell if sig[v] == k])
        cells = out
        if not split:
            return cells


def _orbits(n: int, generators) -> List[List[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in generators:
        for v, w in enumerate(gen):
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


class _Search:
    def __init__(self, g: Graph, colors: Sequence[int]):
        self.n = g.n
        self.masks = g.masks()
        self.colors = list(colors)
        self.generators: List[Tuple[int, ...]] = []
        self.first = None  # (bits, order, path)
        self.best = None

    def _bits(self, order: Sequence[int]) -> int:
        bits = 0
        masks = self.masks
        for i in range(self.n):
            row = masks[order[i]]
            for j in range(i + 1, self.n):
                bits = (bits << 1) | ((row >> order[j]) & 1)
        return bits

    def _automorphism(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        gamma = [0] * self.n
        for x, y in zip(a, b):
            gamma[x] = y
        return tuple(gamma)

    def _same_orbit(self, v: int, explored: List[int], path: List[int]) -> bool:
        stab = [gen for gen in self.generators if all(gen[p] == p for p in path)]
        if not stab:
            return False
        for orbit in _orbits(self.n, stab):
            if v in orbit:
                return any(u in orbit for u in explored)
        return False

    def run(self) -> CanonicalLabeling:
        groups = {}
        for v in range(self.n):
            groups.setdefault(self.colors[v], []).append(v)
        cells = [groups[c] for c in sorted(groups)]
        if self.n:
            self._visit(_refine(self.masks, cells), [])
            bits, order, _ = self.best
        else:
            bits, order = 0, []
        return CanonicalLabeling(
            order=tuple(order),
            colors=tuple(self.colors[v] for v in order),
            bits=bits,
            generators=tuple(self.generators),
        )

    def _visit(self, cells: List[List[int]], path: List[int]) -> Optional[int]:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self._leaf([c[0] for c in cells], path)
        cell = cells[target]
        explored: List[int] = []
        for v in cell:
            if explored and self._same_orbit(v, explored, path):
                continue
            explored.append(v)
            child = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1:]
            jump = self._visit(_refine(self.masks, child), path + [v])
            if jump is not None and jump < len(path):
                return jump
        return None

    def _leaf(self, order: List[int], path: List[int]) -> Optional[int]:
        bits = self._bits(order)
        if self.first is None:
            self.first = self.best = (bits, order, path)
            return None
        for ref in (self.first, self.best):
            if bits == ref[0]:
                self.generators.append(self._automorphism(ref[1], order))
                return _common_prefix(path, ref[2])
        if bits < self.best[0]:
            self.best = (bits, order, path)
        return None


def _common_prefix(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


@lru_cache(maxsize=1 << 16)
def _label(g: Graph, colors: Tuple[int, ...]) -> CanonicalLabeling:
    return _Search(g, colors).run()


def canonical_labeling(g: Graph, colors: Optional[Sequence[int]] = None) -> CanonicalLabeling:
    """Canonical labelling of ``g``; ``colors`` fixes an initial vertex colouring."""
    cols = tuple(colors) if colors is not None else (0,) * g.n
    return _label(g, cols)


def canonical_key(g: Graph, colors: Optional[Sequence[int]] = None) -> Key:
    """Cheap hashable isomorphism invariant; equal keys iff (coloured) isomorphic."""
    return canonical_labeling(g, colors).key


def canonical_code(g: Graph) -> CanonicalCode:
    lab = canonical_labeling(g)
    length = g.n * (g.n - 1) // 2
    bits = np.array([(lab.bits >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)
    data = g.n.to_bytes(2, "big") + np.packbits(bits).tobytes()
    return CanonicalCode(data=data, orbit_count=len(lab.orbits()))


def canonical_form(g: Graph, colors: Optional[Sequence[int]] = None) -> Graph:
    """The canonical representative: vertex at position ``i`` becomes vertex ``i``."""
    return relabel_by_order(g, canonical_labeling(g, colors).order)


def relabel_by_order(g: Graph, order: Sequence[int]) -> Graph:
    pos = {v: i for i, v in enumerate(order)}
    return Graph(g.n, ((pos[a], pos[b]) for a, b in g.edges()))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_key(g) == canonical_key(h)


def automorphism_orbits(g: Graph) -> List[List[int]]:
    return canonical_labeling(g).orbits()
