# src/minorkit/core/grids.py

"""Grids, partially triangulated grids and the path selectors used by the
contraction constructions.

A ``k x r`` grid has vertex ``(x, y)`` for ``x`` in ``[1, k]`` and ``y`` in
``[1, r]`` with id ``(y-1)*k + (x-1)``; ``x`` is the horizontal coordinate.
Selectors address rows relative to the middle row ``ceil(r/2)``, so row
offset ``0`` is the middle horizontal path.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgument
from .graph import Edge, Graph, grid_graph, induced_subgraph
from .planarity import is_planar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartiallyTriangulatedGrid:
    """A ``k x r`` grid plus planar chords on the same vertex set."""

    k: int
    r: int
    chords: Tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.k < 1 or self.r < 1:
            raise InvalidArgument(f"grid dimensions must be positive, got {self.k}x{self.r}")
        object.__setattr__(self, "chords", tuple(sorted((min(a, b), max(a, b)) for a, b in self.chords)))

    @cached_property
    def graph(self) -> Graph:
        base = grid_graph(self.k, self.r)
        if not self.chords:
            return base
        return Graph(base.n, list(base.edges()) + list(self.chords))

    @property
    def n(self) -> int:
        return self.k * self.r

    @property
    def middle(self) -> int:
        """1-based index of the middle row."""
        return (self.r + 1) // 2

    def vertex(self, x: int, y: int) -> int:
        if not (1 <= x <= self.k and 1 <= y <= self.r):
            raise InvalidArgument(f"({x}, {y}) outside the {self.k}x{self.r} grid")
        return (y - 1) * self.k + (x - 1)

    def coords(self, v: int) -> Tuple[int, int]:
        return v % self.k + 1, v // self.k + 1

    def at(self, x: int, offset: int) -> int:
        """Vertex in column ``x`` at ``offset`` rows above the middle row."""
        return self.vertex(x, self.middle + offset)

    def position(self, v: int) -> int:
        """Column of a vertex of the middle horizontal path."""
        x, y = self.coords(v)
        if y != self.middle:
            raise InvalidArgument(f"vertex {v} is not on the middle horizontal path")
        return x

    def is_valid(self) -> bool:
        return all(self.graph.has_edge(a, b) for a, b in grid_graph(self.k, self.r).edges()) and is_planar(self.graph)


def build_grid(k: int, r: int) -> PartiallyTriangulatedGrid:
    return PartiallyTriangulatedGrid(k, r)


def random_triangulated_grid(k: int, r: int, seed: int = 0, density: float = 0.5) -> PartiallyTriangulatedGrid:
    """Grid with a random diagonal in a random subset of its unit squares."""
    rng = np.random.default_rng(seed)
    if k < 2 or r < 2:
        return PartiallyTriangulatedGrid(k, r)
    xs, ys = np.meshgrid(np.arange(k - 1), np.arange(r - 1), indexing="xy")
    xs, ys = xs.ravel(), ys.ravel()
    chosen = rng.random(xs.size) < density
    rising = rng.random(xs.size) < 0.5
    chords = []
    for x, y, up in zip(xs[chosen], ys[chosen], rising[chosen]):
        lower_left = int(y * k + x)
        if up:
            chords.append((lower_left, lower_left + k + 1))
        else:
            chords.append((lower_left + 1, lower_left + k))
    return PartiallyTriangulatedGrid(k, r, tuple(chords))


def grid_from_graph(g: Graph, k: int, r: int) -> PartiallyTriangulatedGrid:
    """Read ``g`` as a partially triangulated grid in the id layout above."""
    if g.n != k * r:
        raise InvalidArgument(f"graph has {g.n} vertices, a {k}x{r} grid has {k * r}")
    base = grid_graph(k, r)
    missing = [e for e in base.edges() if not g.has_edge(*e)]
    if missing:
        raise InvalidArgument(f"graph lacks grid edge {missing[0]}")
    chords = tuple(e for e in g.edges() if not base.has_edge(*e))
    return PartiallyTriangulatedGrid(k, r, chords)


# ---------------------------------------------------------------------------
# path selectors


def vertical_path(grid: PartiallyTriangulatedGrid, i: int) -> List[int]:
    return [grid.vertex(i, y) for y in range(1, grid.r + 1)]


def horizontal_path(grid: PartiallyTriangulatedGrid, j: int) -> List[int]:
    return [grid.vertex(x, j) for x in range(1, grid.k + 1)]


def middle_horizontal_path(grid: PartiallyTriangulatedGrid) -> List[int]:
    return horizontal_path(grid, grid.middle)


def _steps(a: int, b: int) -> range:
    return range(a, b + 1) if a <= b else range(a, b - 1, -1)


def column_segment(grid: PartiallyTriangulatedGrid, i: int, j: int, j2: int) -> List[int]:
    """Subpath of column ``i`` from row offset ``j`` to ``j2``, in that order."""
    if j == j2:
        raise InvalidArgument("a column segment needs distinct row offsets")
    return [grid.at(i, y) for y in _steps(j, j2)]


def row_segment(grid: PartiallyTriangulatedGrid, i: int, i2: int, j: int) -> List[int]:
    """Subpath of the row at offset ``j`` from column ``i`` to ``i2``, in that order."""
    if i == i2:
        raise InvalidArgument("a row segment needs distinct columns")
    return [grid.at(x, j) for x in _steps(i, i2)]


def central_q_grid(grid: PartiallyTriangulatedGrid, q: int) -> Tuple[Graph, List[int]]:
    """Subgraph induced by the central ``q x q`` block; ids listed row-major."""
    if q < 1 or q > min(grid.k, grid.r):
        raise InvalidArgument(f"central {q}-grid does not fit in a {grid.k}x{grid.r} grid")
    ox, oy = (grid.k - q) // 2, (grid.r - q) // 2
    ids = [grid.vertex(ox + x, oy + y) for y in range(1, q + 1) for x in range(1, q + 1)]
    sub, _ = induced_subgraph(grid.graph, ids)
    return sub, ids


def central_offset(size: int, q: int) -> int:
    return (size - q) // 2


def grid_layers(grid: PartiallyTriangulatedGrid) -> List[List[int]]:
    """Layers of the underlying grid, outermost first, each as a cyclic vertex order."""
    layers = []
    x0, y0, x1, y1 = 1, 1, grid.k, grid.r
    while x0 <= x1 and y0 <= y1:
        if x0 == x1 or y0 == y1:
            layers.append([grid.vertex(x, y) for y in range(y0, y1 + 1) for x in range(x0, x1 + 1)])
            break
        ring = [grid.vertex(x, y0) for x in range(x0, x1 + 1)]
        ring += [grid.vertex(x1, y) for y in range(y0 + 1, y1 + 1)]
        ring += [grid.vertex(x, y1) for x in range(x1 - 1, x0 - 1, -1)]
        ring += [grid.vertex(x0, y) for y in range(y1 - 1, y0, -1)]
        layers.append(ring)
        x0, y0, x1, y1 = x0 + 1, y0 + 1, x1 - 1, y1 - 1
    return layers


def is_scattered(collection: Sequence[Iterable[int]], path: Sequence[int], r: int, h: int, d: int) -> bool:
    """``h`` disjoint ``r``-subsets of ``path`` whose union is pairwise more than ``d`` apart on it."""
    if len(collection) != h:
        return False
    index = {v: i for i, v in enumerate(path)}
    seen = set()
    for part in collection:
        part = set(part)
        if len(part) != r or not part <= index.keys() or part & seen:
            return False
        seen |= part
    positions = np.sort(np.fromiter((index[v] for v in seen), dtype=np.int64, count=len(seen)))
    return positions.size < 2 or bool(np.min(np.diff(positions)) > d)


def scattered_positions(count: int, n: int, d: int, seed: Optional[int] = None) -> List[int]:
    """``count`` columns in ``[1, n]`` pairwise more than ``d`` apart, spread at random."""
    need = (count - 1) * (d + 1) + 1 if count else 0
    if need > n:
        raise InvalidArgument(f"{count} positions {d + 1} apart do not fit in {n} columns")
    rng = np.random.default_rng(seed)
    slack = n - need
    cuts = np.sort(rng.integers(0, slack + 1, size=count)) if count else np.array([], dtype=np.int64)
    return [int(1 + i * (d + 1) + cuts[i]) for i in range(count)]
