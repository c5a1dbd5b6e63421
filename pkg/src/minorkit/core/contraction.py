# src/minorkit/core/contraction.py

"""Contractions of partially triangulated grids onto smaller grids.

Three constructions, each returning a :class:`ContractionWitness` that is
re-checked before it is handed out:

* :func:`panchromatic_contract` contracts a grid whose middle row carries a
  scattered collection of colour classes onto an r-grid in which every
  branch set meets every colour;
* :func:`select_scattered` shrinks a square grid carrying large vertex sets
  onto a long thin grid and picks a scattered collection on its middle row
  such that every transversal meets all the sets its colour stands for;
* :func:`apex_grid_contract` chains the two to extract a complete apex grid
  from a grid with apices attached, never contracting an apex.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .. import config
from ..errors import ConstructionBug, InvalidArgument, ResourceLimit
from ..utils.schemas import GraphDocument, WitnessDocument
from .bounds import BoundParams, evaluate
from .graph import ContractionWitness, Edge, Graph, check_model, delete_vertices, quotient
from .grids import (PartiallyTriangulatedGrid, build_grid, central_offset, grid_from_graph, is_scattered,
                    middle_horizontal_path, random_triangulated_grid, scattered_positions)
from .minors import family_minor

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# witness plumbing


def verify_witness(source: Graph, witness: ContractionWitness, fixed: Iterable[int] = (),
                   spanning: bool = False) -> bool:
    problem = check_model(source, witness, fixed, spanning)
    if problem:
        logger.debug("witness rejected: %s", problem)
    return problem is None


def absorb(g: Graph, branch_sets: Sequence[Iterable[int]], allowed: Optional[Set[int]] = None) -> List[FrozenSet[int]]:
    """Grow the branch sets breadth-first until no unassigned vertex touches them.

    A vertex reached from several sets in the same round joins the lowest-indexed one.
    """
    owner: Dict[int, int] = {}
    for i, part in enumerate(branch_sets):
        for v in part:
            owner[v] = i
    frontier = sorted(owner)
    while frontier:
        claims: Dict[int, int] = {}
        for v in frontier:
            for u in g.neighbors(v):
                if u in owner or (allowed is not None and u not in allowed):
                    continue
                if u not in claims or owner[v] < claims[u]:
                    claims[u] = owner[v]
        owner.update(claims)
        frontier = sorted(claims)
    out: List[Set[int]] = [set() for _ in branch_sets]
    for v, i in owner.items():
        out[i].add(v)
    return [frozenset(s) for s in out]


def compose(first: ContractionWitness, second: ContractionWitness) -> ContractionWitness:
    """Model of ``second.target`` in the source of ``first``, given a model of ``first.target``'s minor."""
    sets = tuple(frozenset().union(*(first.branch_sets[u] for u in part)) for part in second.branch_sets)
    meta = {"composed": [first.meta.get("construction"), second.meta.get("construction")]}
    return ContractionWitness(second.target, sets, meta)


def witness_to_document(witness: ContractionWitness, fixed: Iterable[int] = ()) -> WitnessDocument:
    return WitnessDocument(
        target=GraphDocument(n=witness.target.n, edges=witness.target.edges()),
        branch_sets=[sorted(bs) for bs in witness.branch_sets],
        fixed=sorted(fixed),
    )


def witness_from_document(doc: WitnessDocument) -> Tuple[ContractionWitness, List[int]]:
    target = Graph(doc.target.n, [tuple(e) for e in doc.target.edges])
    return ContractionWitness(target, tuple(frozenset(bs) for bs in doc.branch_sets)), list(doc.fixed)


# ---------------------------------------------------------------------------
# panchromatic contraction


def _bound(name: str, **params) -> int:
    return evaluate(name, BoundParams(**params))


class _Layout:
    """Claims grid vertices for branch sets and records the edges of the paths laid."""

    def __init__(self, grid: PartiallyTriangulatedGrid):
        self.grid = grid
        self.owner: Dict[int, int] = {}
        self.edges: Set[Edge] = set()

    def lay(self, t: int, points: Sequence[Tuple[int, int]], last_is_foreign: bool = False):
        ids = [self.grid.at(x, off) for x, off in points]
        claimed = ids[:-1] if last_is_foreign else ids
        for v in claimed:
            if self.owner.setdefault(v, t) != t:
                raise ConstructionBug(f"branch sets {self.owner[v]} and {t} meet at vertex {v}")
        self.edges.update((min(a, b), max(a, b)) for a, b in zip(ids, ids[1:]))


def _column(x: int, lo: int, hi: int) -> List[Tuple[int, int]]:
    step = 1 if hi >= lo else -1
    return [(x, y) for y in range(lo, hi + step, step)]


def _row(y: int, lo: int, hi: int) -> List[Tuple[int, int]]:
    step = 1 if hi >= lo else -1
    return [(x, y) for x in range(lo, hi + step, step)]


def panchromatic_contract(grid: PartiallyTriangulatedGrid, collection: Sequence[Iterable[int]], r: int,
                          d: int) -> ContractionWitness:
    """Contract ``grid`` onto an r-grid whose every branch set meets every set of ``collection``.

    ``collection`` holds ``a`` disjoint sets of ``r^2`` vertices of the middle
    row, pairwise more than ``d`` apart along it. The r-grid vertex in
    column ``i`` and row ``j`` is target vertex ``(j-1)*r + (i-1)``.
    """
    colours = [frozenset(c) for c in collection]
    a, n_sq = len(colours), r * r
    if r < 1 or a < 1:
        raise InvalidArgument("need r >= 1 and at least one colour")
    if d < 2 * n_sq:
        raise InvalidArgument(f"distance {d} is below 2r^2 = {2 * n_sq}")
    width = _bound("scattered_n", r=r, a=a, d=d)
    if grid.k < width:
        raise InvalidArgument(f"grid has {grid.k} columns, needs {width}")
    reach = n_sq + r + 1
    if grid.middle - 1 < reach or grid.r - grid.middle < reach:
        raise InvalidArgument(f"grid has {grid.r} rows, needs {_bound('scattered_m', r=r)}")
    if not is_scattered(colours, middle_horizontal_path(grid), n_sq, a, d):
        raise InvalidArgument(f"collection is not ({n_sq}, {a}, {d})-scattered on the middle row")

    ordered = [sorted(grid.position(v) for v in c) for c in colours]
    spots = {t: sorted(ordered[i][t - 1] for i in range(a)) for t in range(1, n_sq + 1)}
    left = {t: s[0] for t, s in spots.items()}
    right = {t: s[-1] for t, s in spots.items()}
    top, bottom = n_sq + 1, -(n_sq + 1)

    layout = _Layout(grid)
    for t in range(1, n_sq + 1):
        w = n_sq - t
        detours = sorted(h for u in range(t + 1, n_sq + 1) for h in spots[u] if left[t] < h < right[t])
        kept = [x for x in range(left[t], right[t] + 1) if not any(h - w < x < h + w for h in detours)]
        run = [kept[0]]
        for x in kept[1:] + [None]:
            if x is not None and x == run[-1] + 1:
                run.append(x)
                continue
            layout.lay(t, [(c, t) for c in run])
            if x is not None:
                run = [x]
        for h in detours:
            layout.lay(t, _column(h - w, t, -w) + _row(-w, h - w + 1, h + w - 1) + _column(h + w, -w, t))
        for x in spots[t]:
            layout.lay(t, _column(x, 0, t))
        layout.lay(t, _column(left[t], t, top))
        layout.lay(t, _column(right[t], 0, bottom))

    def in_top_pair(block: int) -> bool:
        return block % 2 == 0 or block < r

    def in_bottom_pair(block: int) -> bool:
        return (block % 2 == 0 and block < r) or (block % 2 == 1 and block > 1)

    for block in range(1, r + 1):
        trees = range((block - 1) * r + 1, block * r)
        for t in trees:
            if in_top_pair(block):
                layout.lay(t, _row(top, left[t], left[t + 1]), last_is_foreign=True)
            if in_bottom_pair(block):
                layout.lay(t, _row(bottom, right[t], right[t + 1]), last_is_foreign=True)
    for block in range(1, r):
        for j in range(1, r + 1):
            t, u = (block - 1) * r + j, (block + 1) * r - j + 1
            if block % 2:
                peak = top + (r - j + 1)
                comb = _column(left[t], top, peak) + _row(peak, left[t] + 1, left[u]) + _column(left[u], peak - 1, top)
            else:
                peak = bottom - (r - j + 1)
                comb = _column(right[t], bottom, peak) + _row(peak, right[t] + 1, right[u]) + _column(right[u], peak + 1, bottom)
            layout.lay(t, comb, last_is_foreign=True)

    def target_of(t: int) -> int:
        block, pos = (t - 1) // r + 1, (t - 1) % r + 1
        row = pos if block % 2 else r - pos + 1
        return (row - 1) * r + (block - 1)

    skeleton = set()
    for u, v in layout.edges:
        i, j = layout.owner[u], layout.owner[v]
        if i != j:
            p, q = target_of(i), target_of(j)
            skeleton.add((min(p, q), max(p, q)))
    if skeleton != set(build_grid(r, r).graph.edges()):
        raise ConstructionBug("the laid trees and combs do not form an r-grid")

    seeds: List[Set[int]] = [set() for _ in range(n_sq)]
    for v, t in layout.owner.items():
        seeds[target_of(t)].add(v)
    sets = absorb(grid.graph, seeds)
    for s in sets:
        if any(not s & c for c in colours):
            raise ConstructionBug("a branch set misses a colour")
    target = quotient(grid.graph, sets)
    try:
        grid_from_graph(target, r, r)
    except InvalidArgument as exc:
        raise ConstructionBug(f"contraction is not a partially triangulated grid: {exc.message}") from exc
    witness = ContractionWitness(target, tuple(sets), {"construction": "panchromatic", "r": r, "a": a, "d": d})
    if not verify_witness(grid.graph, witness):
        raise ConstructionBug("panchromatic witness failed verification")
    logger.info("panchromatic contraction of a %dx%d grid onto a %d-grid, %d colours", grid.k, grid.r, r, a)
    return witness


# ---------------------------------------------------------------------------
# selecting a scattered collection


@dataclass(frozen=True)
class ScatteredSelection:
    """A long grid ``grid`` contracted from the input and a scattered collection on its middle row."""

    grid: PartiallyTriangulatedGrid
    witness: ContractionWitness
    collection: Tuple[FrozenSet[int], ...]
    traces: Dict[int, FrozenSet[int]] = field(default_factory=dict)


def _groups(size: int, offset: int, span: int, period: int, window: int, length: int) -> List[List[int]]:
    """Contiguous index groups: singletons outside the span and inside windows, merged runs elsewhere."""
    groups = [[x] for x in range(offset)]
    run: List[int] = []
    for c in range(span):
        cls = c % period + 1
        if window <= cls < window + length:
            if run:
                groups.append(run)
                run = []
            groups.append([offset + c])
        else:
            run.append(offset + c)
    groups.append(run)
    groups.extend([x] for x in range(offset + span, size))
    return groups


def _window(marks: Iterable[int], period: int, length: int) -> int:
    taken = set(marks)
    for t in range(2, period - length + 1):
        if not taken & set(range(t, t + length)):
            return t
    raise ConstructionBug("no free window among the classes")


Node = Tuple[int, int]

# class choices tried per lattice path before moving on to the next one
_CLASS_CHOICES = 4096


def _snake(size: int) -> List[Node]:
    return [(p if k % 2 == 0 else size - 1 - p, k) for k in range(size) for p in range(size)]


def _spiral(size: int) -> List[Node]:
    path: List[Node] = []
    lo, hi = 0, size - 1
    while lo <= hi:
        path += [(p, lo) for p in range(lo, hi + 1)]
        path += [(hi, k) for k in range(lo + 1, hi + 1)]
        if lo < hi:
            path += [(p, hi) for p in range(hi - 1, lo - 1, -1)]
            path += [(lo, k) for k in range(hi - 1, lo, -1)]
        lo, hi = lo + 1, hi - 1
    return path


def lattice_paths(size: int) -> List[Tuple[Node, ...]]:
    """Snakes and spirals through every node of a ``size x size`` lattice, under the eight symmetries of the square."""
    paths: List[Tuple[Node, ...]] = []
    for base in (_snake(size), _spiral(size)):
        for sym in range(8):
            path = []
            for p, k in base:
                if sym & 4:
                    p, k = k, p
                if sym & 1:
                    p = size - 1 - p
                if sym & 2:
                    k = size - 1 - k
                path.append((p, k))
            if tuple(path) not in paths:
                paths.append(tuple(path))
    return paths


@dataclass(frozen=True)
class _Thickened:
    """A lattice path widened into ``2*half+1`` lanes of coarse cells.

    ``columns[c][rho]`` lists the cells of ribbon vertex ``(c+1, rho+1)``;
    ``heavy`` maps a lattice node to the ribbon column through its centre.
    """

    columns: List[List[List[Node]]]
    heavy: Dict[Node, int]
    corners: FrozenSet[Node]


def _thicken(path: Sequence[Node], centre, half: int) -> _Thickened:
    """Straight nodes give ``2*half+1`` columns, bends one column of nested L shapes, steps one column each."""
    lanes = range(half, -half - 1, -1)
    steps = [(b[0] - a[0], b[1] - a[1]) for a, b in zip(path, path[1:])]
    first = steps[0] if steps else (1, 0)
    columns: List[List[List[Node]]] = []
    heavy: Dict[Node, int] = {}
    corners = set()
    for i, node in enumerate(path):
        cx, cy = centre(node)
        dx, dy = steps[i - 1] if i else first
        ex, ey = steps[i] if i < len(steps) else (dx, dy)
        # left of travel, with rows growing downwards
        lx, ly = dy, -dx
        if (ex, ey) == (dx, dy):
            heavy[node] = len(columns) + half
            for t in range(-half, half + 1):
                columns.append([[(cx + t * dx + s * lx, cy + t * dy + s * ly)] for s in lanes])
        else:
            left = (ex, ey) == (lx, ly)
            mx, my = ey, -ex
            ray = []
            for s in lanes:
                bend = -s if left else s
                cells = [(cx + t * dx + s * lx, cy + t * dy + s * ly) for t in range(-half, bend + 1)]
                cells += [(cx + t * ex + s * mx, cy + t * ey + s * my) for t in range(-bend + 1, half + 1)]
                ray.append(cells)
            heavy[node] = len(columns)
            corners.add(node)
            columns.append(ray)
        if i < len(steps):
            columns.append([[(cx + (half + 1) * ex + s * ey, cy + (half + 1) * ey - s * ex)] for s in lanes])
    return _Thickened(columns, heavy, frozenset(corners))


def _pick_classes(classes: Dict[FrozenSet[int], List[Node]], a: int, n_sq: int, d: int,
                  layout: _Thickened) -> Optional[List[List[Node]]]:
    """For every set a trace class holding it, and ``n_sq`` nodes of each class more than ``d`` apart on the ribbon.

    Straight nodes sit at least ``d + 1`` columns from each other, so they
    are taken first; bends only fill a class that runs short of them.
    """
    def straight(tr: FrozenSet[int]) -> List[Node]:
        return sorted((u for u in classes[tr] if u not in layout.corners), key=layout.heavy.__getitem__)

    options = []
    for i in range(a):
        held = [tr for tr, nodes in classes.items() if i in tr and len(nodes) >= n_sq]
        held.sort(key=lambda tr: (-len(straight(tr)), -len(classes[tr]), sorted(tr)))
        options.append(held)
    for combo in itertools.islice(itertools.product(*options), _CLASS_CHOICES):
        needed = list(dict.fromkeys(combo))
        picks = {tr: straight(tr)[:n_sq] for tr in needed}
        taken = [layout.heavy[u] for nodes in picks.values() for u in nodes]
        for tr in needed:
            bends = sorted((u for u in classes[tr] if u in layout.corners), key=layout.heavy.__getitem__)
            for u in bends:
                if len(picks[tr]) == n_sq:
                    break
                if all(abs(layout.heavy[u] - c) > d for c in taken):
                    picks[tr].append(u)
                    taken.append(layout.heavy[u])
        if all(len(nodes) == n_sq for nodes in picks.values()):
            return [picks[tr] for tr in needed]
    return None


def select_scattered(grid: PartiallyTriangulatedGrid, sets: Sequence[Iterable[int]], r: int) -> ScatteredSelection:
    """Contract a square grid onto a long grid with a scattered collection on its middle row.

    Every vertex of the collection's ``i``-th set has a branch set meeting
    ``sets[j]`` for every ``j`` in a common trace containing ``i``, so any
    transversal of the collection meets every input set.
    """
    h = grid.k
    if grid.r != h:
        raise InvalidArgument("select_scattered needs a square grid")
    a = len(sets)
    if a < 1:
        raise InvalidArgument("need at least one vertex set")
    n_sq = r * r
    ell = _bound("scattered_m", r=r)
    b = _bound("apex_grid_b", r=r, a=a)
    z = _bound("apex_grid_z", r=r, a=a)
    f10 = b * z
    f11 = _bound("apex_grid_neighbors", r=r, a=a)
    if h < f10 + 2 * ell:
        raise InvalidArgument(f"grid height {h} is below {f10 + 2 * ell}")
    o = central_offset(h, f10)

    def central(v: int) -> bool:
        x, y = grid.coords(v)
        return o < x <= o + f10 and o < y <= o + f10

    colours = [frozenset(v for v in s if central(v)) for s in sets]
    for i, c in enumerate(colours):
        if len(c) < f11:
            raise InvalidArgument(f"set {i} has {len(c)} vertices in the central {f10}-grid, needs {f11}")

    xs, ys = [], []
    for c in colours:
        cols = np.array([grid.coords(v)[0] - 1 - o for v in c])
        rows = np.array([grid.coords(v)[1] - 1 - o for v in c])
        x_cls = int(np.argmax(np.bincount(cols % b, minlength=b))) + 1
        picked = rows[(cols % b) == x_cls - 1]
        xs.append(x_cls)
        ys.append(int(np.argmax(np.bincount(picked % b, minlength=b))) + 1)
    col_groups = _groups(h, o, f10, b, _window(xs, b, ell), ell)
    row_groups = _groups(h, o, f10, b, _window(ys, b, ell), ell)
    width, height = len(col_groups), len(row_groups)

    # contract runs into single vertices
    blocks = [frozenset(grid.vertex(x + 1, y + 1) for y in rows for x in cols)
              for rows in row_groups for cols in col_groups]
    coarse = quotient(grid.graph, blocks)

    def cell(col: int, row: int) -> int:
        return row * width + col

    half = (ell - 1) // 2
    size = z + 1

    def centre(node: Node) -> Node:
        return o + node[0] * (ell + 1), o + node[1] * (ell + 1)

    if o < half or o + z * (ell + 1) + half > min(width, height) - 1:
        raise ConstructionBug("heavy squares leave the coarse grid")

    # heavy blocks sit on a size x size lattice; each holds at most one cell of a set's class pair
    block_trace: Dict[Node, FrozenSet[int]] = {}
    for k in range(size):
        for p in range(size):
            block = blocks[cell(*centre((p, k)))]
            block_trace[(p, k)] = frozenset(i for i, c in enumerate(colours) if block & c)
    classes: Dict[FrozenSet[int], List[Node]] = {}
    for node, tr in block_trace.items():
        if tr:
            classes.setdefault(tr, []).append(node)
    for i in range(a):
        if not any(i in tr and len(nodes) >= n_sq for tr, nodes in classes.items()):
            raise ConstructionBug(f"set {i} has no trace class of {n_sq} heavy blocks")

    for number, path in enumerate(lattice_paths(size)):
        layout = _thicken(path, centre, half)
        picks = _pick_classes(classes, a, n_sq, ell, layout)
        if picks is not None:
            break
        logger.debug("lattice path %d bends through too many heavy blocks", number)
    else:
        raise ConstructionBug("no lattice path keeps the heavy classes apart on the ribbon")

    length = len(layout.columns)
    ribbon = PartiallyTriangulatedGrid(length, ell)
    owner: Dict[int, int] = {}

    def claim(v: int, target: int):
        if owner.setdefault(v, target) != target:
            raise ConstructionBug(f"ribbon pieces meet at coarse vertex {v}")

    for c, ray in enumerate(layout.columns):
        for rho, cells in enumerate(ray, start=1):
            for x, y in cells:
                claim(cell(x, y), ribbon.vertex(c + 1, rho))

    seeds: List[Set[int]] = [set() for _ in range(ribbon.n)]
    for v, target in owner.items():
        seeds[target].add(v)
    coarse_sets = absorb(coarse, seeds)
    sets_h = tuple(frozenset().union(*(blocks[u] for u in part)) for part in coarse_sets)
    target_graph = quotient(grid.graph, sets_h)
    try:
        ribbon = grid_from_graph(target_graph, length, ell)
    except InvalidArgument as exc:
        raise ConstructionBug(f"ribbon contraction is not a grid: {exc.message}") from exc
    witness = ContractionWitness(target_graph, sets_h, {"construction": "ribbon", "r": r, "a": a, "path": number})

    def on_ribbon(node: Node) -> int:
        return ribbon.vertex(layout.heavy[node] + 1, ribbon.middle)

    chosen = [frozenset(on_ribbon(u) for u in nodes) for nodes in picks]
    traces = {on_ribbon(u): frozenset(i for i, c in enumerate(colours) if sets_h[on_ribbon(u)] & c)
              for u in block_trace}
    if not is_scattered(chosen, middle_horizontal_path(ribbon), n_sq, len(chosen), ell):
        raise ConstructionBug("selected collection is not scattered")
    logger.info("selected %d scattered classes on a %dx%d ribbon along lattice path %d", len(chosen), length, ell,
                number)
    return ScatteredSelection(ribbon, witness, tuple(chosen), traces)


# ---------------------------------------------------------------------------
# apex grids


@dataclass(frozen=True)
class ApexGrid:
    """A partially triangulated grid plus apices ``grid.n, grid.n+1, ...``."""

    grid: PartiallyTriangulatedGrid
    neighbors: Tuple[FrozenSet[int], ...]
    apex_edges: Tuple[Edge, ...] = ()

    @property
    def apices(self) -> List[int]:
        return list(range(self.grid.n, self.grid.n + len(self.neighbors)))

    @cached_property
    def graph(self) -> Graph:
        base = self.grid.graph
        edges = list(base.edges())
        for i, nbrs in enumerate(self.neighbors):
            edges.extend((v, base.n + i) for v in nbrs)
        edges.extend((base.n + i, base.n + j) for i, j in self.apex_edges)
        return Graph(base.n + len(self.neighbors), edges)

    def is_complete(self) -> bool:
        everything = frozenset(range(self.grid.n))
        return all(nbrs == everything for nbrs in self.neighbors)


def complete_apex_grid(grid: PartiallyTriangulatedGrid, a: int) -> ApexGrid:
    everything = frozenset(range(grid.n))
    return ApexGrid(grid, tuple(everything for _ in range(a)))


def random_apex_grid(h: int, a: int, density: float, seed: int = 0, chords: float = 0.0) -> ApexGrid:
    """Square grid with ``a`` apices, each adjacent to a random ``density`` share of the grid."""
    rng = np.random.default_rng(seed)
    grid = random_triangulated_grid(h, h, seed=seed, density=chords)
    neighbors = tuple(frozenset(int(v) for v in np.flatnonzero(rng.random(grid.n) < density)) for _ in range(a))
    return ApexGrid(grid, neighbors)


def apex_grid_contract(ag: ApexGrid, r: int) -> ContractionWitness:
    """Contract ``ag`` onto a complete apex r-grid, keeping every apex a singleton branch set.

    The r-grid vertices are target vertices ``0..r^2-1`` and apex ``i`` is
    target vertex ``r^2 + i``.
    """
    a = len(ag.neighbors)
    if a < 1:
        raise InvalidArgument("need at least one apex")
    selection = select_scattered(ag.grid, ag.neighbors, r)
    ell = _bound("scattered_m", r=r)
    inner = panchromatic_contract(selection.grid, selection.collection, r, ell)
    grid_part = compose(selection.witness, inner)
    sets = list(grid_part.branch_sets) + [frozenset({v}) for v in ag.apices]
    target = quotient(ag.graph, sets)
    n_sq = r * r
    for i in range(a):
        missing = [t for t in range(n_sq) if not target.has_edge(t, n_sq + i)]
        if missing:
            raise ConstructionBug(f"apex {i} misses grid vertex {missing[0]} of the contraction")
    witness = ContractionWitness(target, tuple(sets), {"construction": "apex-grid", "r": r, "a": a})
    if not verify_witness(ag.graph, witness, fixed=ag.apices):
        raise ConstructionBug("apex grid witness failed verification")
    return witness


# ---------------------------------------------------------------------------
# fixtures and forcing


def scattered_fixture(r: int, a: int, d: int, layout: str = "blocks", seed: int = 0,
                      chords: float = 0.0) -> Tuple[PartiallyTriangulatedGrid, List[FrozenSet[int]]]:
    """Smallest grid admitting an ``(r^2, a, d)``-scattered collection, with one placed on its middle row.

    ``layout`` decides how positions are coloured: ``"blocks"`` gives each
    colour a contiguous stretch, ``"interleaved"`` deals them round-robin and
    ``"random"`` shuffles them with ``seed``.
    """
    n_sq = r * r
    width = max(_bound("scattered_n", r=r, a=a, d=d), (n_sq * a - 1) * (d + 1) + 1)
    height = _bound("scattered_m", r=r)
    grid = random_triangulated_grid(width, height, seed=seed, density=chords)
    spots = scattered_positions(n_sq * a, width, d, seed)
    if layout == "blocks":
        colour = [p // n_sq for p in range(n_sq * a)]
    elif layout == "interleaved":
        colour = [p % a for p in range(n_sq * a)]
    elif layout == "random":
        colour = list(np.random.default_rng(seed).permutation([p // n_sq for p in range(n_sq * a)]))
    else:
        raise InvalidArgument(f"unknown layout {layout!r}")
    parts: List[Set[int]] = [set() for _ in range(a)]
    for x, c in zip(spots, colour):
        parts[int(c)].add(grid.at(x, 0))
    return grid, [frozenset(p) for p in parts]


def forcing_check(g: Graph, A: Iterable[int], F: Iterable[Graph], k: int,
                  max_subsets: Optional[int] = None) -> bool:
    """Whether every set of at most ``k`` vertices hitting all ``F``-minors of ``g`` meets ``A``."""
    apices = set(A)
    if not apices:
        raise InvalidArgument("the apex set must be nonempty")
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    family = list(F)
    free = [v for v in g.vertices if v not in apices]
    total = sum(math.comb(len(free), s) for s in range(min(k, len(free)) + 1))
    limit = config.budget("forcing_subsets", max_subsets)
    if total > limit:
        raise ResourceLimit(f"{total} deletion sets exceed the budget", budget=limit)
    for size in range(min(k, len(free)) + 1):
        for S in itertools.combinations(free, size):
            if not family_minor(family, delete_vertices(g, S)[0]):
                logger.info("deletion set %s avoids the apices and hits every model", list(S))
                return False
    return True


def forcing_fixture(r: int, a: int = 1) -> Tuple[Graph, List[int]]:
    """A complete apex r-grid as a plain graph, with its apex ids."""
    ag = complete_apex_grid(build_grid(r, r), a)
    return ag.graph, ag.apices


def minimal_apex_height(r: int, a: int) -> int:
    """Smallest square grid accepted by :func:`apex_grid_contract`."""
    return _bound("apex_grid_height", r=r, a=a) + 2 * _bound("scattered_m", r=r)


def central_square(h: int, q: int) -> List[int]:
    """Vertex ids of the central ``q x q`` square of an ``h x h`` grid."""
    o = central_offset(h, q)
    return [(y - 1) * h + (x - 1) for y in range(o + 1, o + q + 1) for x in range(o + 1, o + q + 1)]


def apex_fixture(r: int, a: int, seed: int = 0, density: float = 1.0) -> ApexGrid:
    """Minimal apex grid whose apices see a ``density`` share of the central region (all of it by default)."""
    h = minimal_apex_height(r, a)
    f10 = _bound("apex_grid_height", r=r, a=a)
    grid = build_grid(h, h)
    square = central_square(h, f10)
    if density >= 1.0:
        return ApexGrid(grid, tuple(frozenset(square) for _ in range(a)))
    rng = np.random.default_rng(seed)
    chosen = tuple(frozenset(v for v, keep in zip(square, rng.random(len(square)) < density) if keep)
                   for _ in range(a))
    return ApexGrid(grid, chosen)
