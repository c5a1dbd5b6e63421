# src/minorkit/core/walls.py

"""Walls, subwalls, layers, bricks, canonical partitions and subwall packings.

A wall is kept as the elementary wall it subdivides: every branch vertex
carries its elementary coordinates ``(x, y)`` in ``[2r] x [r]`` and every
elementary edge carries the host path realizing it. Subwalls, layers and
bricks are then index arithmetic on coordinates.
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..errors import ConstructionBug, InvalidArgument
from ..utils.schemas import WallDocument
from .bounds import ceil_sqrt, odd
from .graph import Edge, Graph, is_connected_subset

logger = logging.getLogger(__name__)

Coord = Tuple[int, int]
BagIndex = Tuple[int, int]


def _elementary_coords(r: int) -> List[Coord]:
    """Vertices of the elementary r-wall, row-major by ``(y, x)``."""
    return [(x, y) for y in range(1, r + 1) for x in range(1, 2 * r + 1) if (x, y) not in ((1, r), (2 * r, 1))]


def _elementary_edges(coords: Iterable[Coord]) -> List[Tuple[Coord, Coord]]:
    present = set(coords)
    edges = []
    for x, y in sorted(present, key=lambda c: (c[1], c[0])):
        if (x + 1, y) in present:
            edges.append(((x, y), (x + 1, y)))
        if (x + y) % 2 == 0 and (x, y + 1) in present:
            edges.append(((x, y), (x, y + 1)))
    return edges


def _key(a: Coord, b: Coord) -> Tuple[Coord, Coord]:
    return (a, b) if (a[1], a[0]) <= (b[1], b[0]) else (b, a)


class Wall:
    """An r-wall inside some host graph, addressed by elementary coordinates."""

    def __init__(self, height: int, coords: Mapping[int, Coord], paths: Mapping[Tuple[Coord, Coord], Sequence[int]]):
        if height < 3 or height % 2 == 0:
            raise InvalidArgument(f"wall height must be odd and at least 3, got {height}")
        self.height = height
        self.coords: Dict[int, Coord] = dict(coords)
        self._at: Dict[Coord, int] = {c: v for v, c in self.coords.items()}
        if set(self._at) != set(_elementary_coords(height)):
            raise InvalidArgument(f"branch coordinates do not form an elementary {height}-wall")
        self.paths: Dict[Tuple[Coord, Coord], Tuple[int, ...]] = {}
        for (a, b), path in paths.items():
            key = _key(a, b)
            path = tuple(path) if key == (a, b) else tuple(reversed(path))
            if path[0] != self._at[key[0]] or path[-1] != self._at[key[1]]:
                raise InvalidArgument(f"path for {key} does not join its branch vertices")
            self.paths[key] = path
        expected = {_key(a, b) for a, b in _elementary_edges(self._at)}
        if set(self.paths) != expected:
            raise InvalidArgument("wall paths do not match the elementary edges")

    # -- basic structure ----------------------------------------------------

    def vertex(self, x: int, y: int) -> int:
        return self._at[(x, y)]

    def path(self, a: Coord, b: Coord) -> Tuple[int, ...]:
        key = _key(a, b)
        p = self.paths[key]
        return p if key == (a, b) else tuple(reversed(p))

    def branch_vertices(self) -> Set[int]:
        return set(self.coords)

    def vertices(self) -> Set[int]:
        out: Set[int] = set(self.coords)
        for p in self.paths.values():
            out.update(p)
        return out

    def edges(self) -> List[Edge]:
        return sorted({(min(a, b), max(a, b)) for p in self.paths.values() for a, b in zip(p, p[1:])})

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges() if v in e)

    def subdivision_map(self) -> Dict[Tuple[Coord, Coord], int]:
        """Length, in edges, of the path realizing each elementary edge."""
        return {k: len(p) - 1 for k, p in self.paths.items()}

    def is_subgraph_of(self, g: Graph) -> bool:
        return all(0 <= v < g.n for v in self.vertices()) and all(g.has_edge(a, b) for a, b in self.edges())

    def _walk(self, seq: Sequence[Coord]) -> List[int]:
        out = [self._at[seq[0]]]
        for a, b in zip(seq, seq[1:]):
            out.extend(self.path(a, b)[1:])
        return out

    # -- rows, columns, perimeter -------------------------------------------

    def row_coords(self, j: int) -> List[Coord]:
        if not 1 <= j <= self.height:
            raise InvalidArgument(f"row {j} outside [1, {self.height}]")
        return sorted((c for c in self._at if c[1] == j), key=lambda c: c[0])

    def column_coords(self, i: int) -> List[Coord]:
        r = self.height
        if not 1 <= i <= r:
            raise InvalidArgument(f"column {i} outside [1, {r}]")
        x = 2 * i - 1
        seq = [(x, 1)]
        for y in range(2, r):
            seq += [(x, y), (x + 1, y)] if y % 2 == 0 else [(x + 1, y), (x, y)]
        seq.append((x + 1, r))
        return seq

    def row(self, j: int) -> List[int]:
        return self._walk(self.row_coords(j))

    def column(self, i: int) -> List[int]:
        return self._walk(self.column_coords(i))

    def rows(self) -> List[List[int]]:
        return [self.row(j) for j in range(1, self.height + 1)]

    def columns(self) -> List[List[int]]:
        return [self.column(i) for i in range(1, self.height + 1)]

    def perimeter_coords(self) -> List[Coord]:
        r = self.height
        bottom, top = self.row_coords(1), self.row_coords(r)
        left, right = self.column_coords(1), self.column_coords(r)
        return bottom + right[1:] + list(reversed(top))[1:] + list(reversed(left))[1:-1]

    def perimeter(self) -> List[int]:
        """The perimeter as a cyclic vertex order, starting at the bottom-left corner."""
        seq = self.perimeter_coords()
        return self._walk(seq + [seq[0]])[:-1]

    def corners(self) -> List[int]:
        r = self.height
        return [self._at[c] for c in ((1, 1), (2, r), (2 * r - 1, 1), (2 * r, r))]

    def pegs(self) -> List[int]:
        """Degree-two branch vertices, in perimeter order."""
        deg: Dict[Coord, int] = {c: 0 for c in self._at}
        for a, b in self.paths:
            deg[a] += 1
            deg[b] += 1
        return [self._at[c] for c in self.perimeter_coords() if deg[c] == 2]

    # -- bricks -------------------------------------------------------------

    def brick_coords(self, i: int, j: int) -> List[Coord]:
        r = self.height
        if not (1 <= i < r and 1 <= j < r):
            raise InvalidArgument(f"brick ({i}, {j}) outside [1, {r - 1}]^2")
        a = 2 * i - 1 if j % 2 else 2 * i
        return [(a, j), (a + 1, j), (a + 2, j), (a + 2, j + 1), (a + 1, j + 1), (a, j + 1)]

    def brick(self, i: int, j: int) -> List[int]:
        seq = self.brick_coords(i, j)
        return self._walk(seq + [seq[0]])[:-1]

    def bricks(self) -> Dict[BagIndex, List[int]]:
        r = self.height
        return {(i, j): self.brick(i, j) for j in range(1, r) for i in range(1, r)}

    def internal_bricks(self) -> Dict[BagIndex, List[int]]:
        rim = set(self.perimeter())
        return {k: b for k, b in self.bricks().items() if not rim & set(b)}

    # -- subwalls -----------------------------------------------------------

    def subwall(self, columns: Tuple[int, int], rows: Tuple[int, int]) -> "Wall":
        """Subwall on columns ``columns[0]..columns[1]`` and rows ``rows[0]..rows[1]``."""
        (i0, i1), (j0, j1) = columns, rows
        q = i1 - i0 + 1
        if q != j1 - j0 + 1:
            raise InvalidArgument("a subwall needs as many rows as columns")
        if q < 3 or q % 2 == 0 or i0 < 1 or j0 < 1 or i1 > self.height or j1 > self.height:
            raise InvalidArgument(f"no subwall on columns {columns}, rows {rows} of a {self.height}-wall")
        if (i0, i1, j0, j1) == (1, self.height, 1, self.height):
            return self
        box = {(x, y) for (x, y) in self._at if 2 * i0 - 1 <= x <= 2 * i1 and j0 <= y <= j1}
        edges = [e for e in _elementary_edges(self._at) if e[0] in box and e[1] in box]
        while True:
            deg: Dict[Coord, int] = {c: 0 for c in box}
            for a, b in edges:
                deg[a] += 1
                deg[b] += 1
            low = {c for c, d in deg.items() if d <= 1}
            if not low:
                break
            box -= low
            edges = [e for e in edges if e[0] in box and e[1] in box]
        if j0 % 2:
            move = lambda c: (c[0] - 2 * (i0 - 1), c[1] - j0 + 1)  # noqa: E731
        else:
            move = lambda c: (2 * i1 + 1 - c[0], c[1] - j0 + 1)  # noqa: E731
        coords = {self._at[c]: move(c) for c in box}
        paths = {(move(a), move(b)): self.path(a, b) for a, b in edges}
        try:
            return Wall(q, coords, paths)
        except InvalidArgument as exc:
            raise ConstructionBug(f"subwall extraction failed: {exc.message}") from exc

    def layers(self) -> List[List[int]]:
        r = self.height
        return [self.subwall((t, r + 1 - t), (t, r + 1 - t)).perimeter() for t in range(1, (r - 1) // 2 + 1)]

    def central_subwall(self, q: int) -> "Wall":
        r = self.height
        if q % 2 == 0 or q < 3 or q > r:
            raise InvalidArgument(f"central subwall height must be odd in [3, {r}], got {q}")
        lo, hi = (r - q) // 2 + 1, (r + q) // 2
        return self.subwall((lo, hi), (lo, hi))

    def central_vertices(self) -> Tuple[int, int]:
        c = (self.height + 1) // 2
        return self._at[(2 * c - 1, c)], self._at[(2 * c, c)]

    def interior(self) -> Tuple[FrozenSet[int], FrozenSet[Edge]]:
        """The wall minus its perimeter edges and its degree-two perimeter vertices."""
        rim = self.perimeter()
        rim_edges = {(min(a, b), max(a, b)) for a, b in zip(rim, rim[1:] + rim[:1])}
        degree: Dict[int, int] = {}
        for a, b in self.edges():
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        drop = {v for v in rim if degree[v] == 2}
        vertices = frozenset(self.vertices() - drop)
        edges = frozenset(e for e in self.edges() if e not in rim_edges)
        return vertices, edges

    # -- serialization ------------------------------------------------------

    def to_document(self) -> WallDocument:
        return WallDocument(
            height=self.height,
            coords=[(v, x, y) for v, (x, y) in sorted(self.coords.items())],
            paths=[list(p) for _, p in sorted(self.paths.items())],
        )

    @classmethod
    def from_document(cls, doc: WallDocument) -> "Wall":
        coords = {v: (x, y) for v, x, y in doc.coords}
        paths = {}
        for p in doc.paths:
            if len(p) < 2 or p[0] not in coords or p[-1] not in coords:
                raise InvalidArgument("wall path must join two branch vertices")
            paths[(coords[p[0]], coords[p[-1]])] = p
        return cls(doc.height, coords, paths)

    def __repr__(self) -> str:
        return f"Wall(height={self.height}, vertices={len(self.vertices())})"


def is_tilt(w: Wall, other: Wall) -> bool:
    """Whether two walls have identical interiors."""
    return w.interior() == other.interior()


def build_elementary_wall(r: int, subdivisions: Optional[Mapping[Tuple[Coord, Coord], int]] = None) -> Tuple[Graph, Wall]:
    """The elementary r-wall, optionally with extra vertices on some edges.

    Branch vertices get ids ``0..2r^2-3`` in row-major ``(y, x)`` order;
    subdivision vertices follow in edge order.
    """
    if r < 3 or r % 2 == 0:
        raise InvalidArgument(f"wall height must be odd and at least 3, got {r}")
    coords = _elementary_coords(r)
    ids = {c: i for i, c in enumerate(coords)}
    extra = {_key(a, b): k for (a, b), k in (subdivisions or {}).items()}
    n = len(coords)
    paths = {}
    edges: List[Edge] = []
    for a, b in _elementary_edges(coords):
        k = extra.pop(_key(a, b), 0)
        if k < 0:
            raise InvalidArgument("subdivision counts must be nonnegative")
        path = [ids[a]] + list(range(n, n + k)) + [ids[b]]
        n += k
        paths[(a, b)] = path
        edges.extend(zip(path, path[1:]))
    if extra:
        raise InvalidArgument(f"{next(iter(extra))} is not an edge of the elementary {r}-wall")
    g = Graph(n, edges)
    return g, Wall(r, {i: c for c, i in ids.items()}, paths)


def subdivide_wall(g: Graph, w: Wall, a: Coord, b: Coord, count: int = 1) -> Tuple[Graph, Wall]:
    """Insert ``count`` new vertices on the host path realizing elementary edge ``ab``."""
    path = list(w.path(a, b))
    u, v = path[-2], path[-1]
    new = list(range(g.n, g.n + count))
    edges = [e for e in g.edges() if e != (min(u, v), max(u, v))]
    chain = [u] + new + [v]
    edges.extend(zip(chain, chain[1:]))
    paths = dict(w.paths)
    paths[_key(a, b)] = tuple(path[:-1] + new + [v]) if _key(a, b) == (a, b) else tuple(reversed(path[:-1] + new + [v]))
    return Graph(g.n + count, edges), Wall(w.height, w.coords, paths)


# ---------------------------------------------------------------------------
# canonical partitions


@dataclass(frozen=True)
class CanonicalPartition:
    internal: Dict[BagIndex, FrozenSet[int]]
    external: FrozenSet[int]

    def bags(self) -> List[FrozenSet[int]]:
        """Internal bags in ``(i, j)`` order, then the external bag."""
        return [self.internal[k] for k in sorted(self.internal)] + [self.external]

    def indices(self) -> List[Optional[BagIndex]]:
        return sorted(self.internal) + [None]

    def bag_of(self, v: int) -> Optional[BagIndex]:
        for k, bag in self.internal.items():
            if v in bag:
                return k
        if v in self.external:
            return None
        raise InvalidArgument(f"vertex {v} is in no bag")

    def vertices(self) -> Set[int]:
        return set(self.external).union(*self.internal.values())

    def validate(self, g: Graph, vertices: Optional[Iterable[int]] = None) -> Optional[str]:
        """``None`` when the bags partition ``vertices`` (default: all of ``g``) into connected sets."""
        expected = set(range(g.n)) if vertices is None else set(vertices)
        seen: Set[int] = set()
        for k, bag in zip(self.indices(), self.bags()):
            if seen & bag:
                return f"bag {k} overlaps another bag"
            seen |= bag
            if k is not None and not is_connected_subset(g, bag):
                return f"internal bag {k} is not connected"
        if seen != expected:
            return "bags do not cover the vertex set exactly"
        return None

    def internal_at_depth(self, w: Wall, p: int) -> List[BagIndex]:
        """Internal bags avoiding the first ``p`` layers of ``w``."""
        outer: Set[int] = set()
        for layer in w.layers()[:p]:
            outer.update(layer)
        return [k for k in sorted(self.internal) if not outer & self.internal[k]]


def canonical_partition(w: Wall) -> CanonicalPartition:
    """Bags ``Q(i,j)`` for ``i, j`` in ``[2, r-1]`` plus the external bag, on the vertices of ``w``."""
    r = w.height
    internal: Dict[BagIndex, FrozenSet[int]] = {}
    for i in range(2, r):
        for j in range(2, r):
            left, right = (2 * i - 1, j), (2 * i, j)
            bag = set(w.path(left, right))
            # row j toward column i-1, stopping before it
            bag.update(w.path(left, (2 * i - 2, j))[1:-1])
            # column i toward row j+1 (i even) or row j-1 (i odd), stopping before it
            step = 1 if i % 2 == 0 else -1
            for c in (left, right):
                if (c[0] + c[1] + (0 if step == 1 else 1)) % 2 == 0:
                    bag.update(w.path(c, (c[0], c[1] + step))[1:-1])
            internal[(i, j)] = frozenset(bag)
    used = set().union(*internal.values())
    return CanonicalPartition(internal, frozenset(w.vertices() - used))


def bag_brick_incidence(w: Wall, cp: CanonicalPartition) -> Dict[BagIndex, int]:
    """Number of bricks of ``w`` each internal bag has a vertex on."""
    bricks = [set(b) for b in w.bricks().values()]
    return {k: sum(1 for b in bricks if b & bag) for k, bag in cp.internal.items()}


def extend_partition(cp: CanonicalPartition, g: Graph, w: Wall,
                     compass: Optional[Iterable[int]] = None) -> CanonicalPartition:
    """Grow the bags over the compass, then put every other vertex of ``g`` in the external bag.

    The lowest-id unassigned compass vertex next to a bag joins the
    lowest-indexed adjacent bag, internal bags ordered by ``(i, j)``.
    """
    compass_set = set(range(g.n)) if compass is None else set(compass)
    if not compass_set >= w.vertices():
        raise InvalidArgument("the compass does not contain the wall")
    if not is_connected_subset(g, compass_set):
        raise InvalidArgument("the compass is not connected")
    order = cp.indices()
    owner: Dict[int, int] = {}
    for idx, bag in enumerate(cp.bags()):
        for v in bag:
            owner[v] = idx
    frontier: List[int] = []
    queued: Set[int] = set()

    def offer(v: int):
        for x in g.neighbors(v):
            if x in compass_set and x not in owner and x not in queued:
                queued.add(x)
                heapq.heappush(frontier, x)

    for v in list(owner):
        offer(v)
    while frontier:
        x = heapq.heappop(frontier)
        owner[x] = min(owner[y] for y in g.neighbors(x) if y in owner)
        offer(x)
    members: Dict[int, Set[int]] = {idx: set() for idx in range(len(order))}
    for v, idx in owner.items():
        members[idx].add(v)
    external_idx = len(order) - 1
    members[external_idx].update(set(range(g.n)) - set(owner))
    internal = {order[idx]: frozenset(vs) for idx, vs in members.items() if idx != external_idx}
    return CanonicalPartition(internal, frozenset(members[external_idx]))


# ---------------------------------------------------------------------------
# packings


def packing_height(z: int, x: int, p: int) -> int:
    return odd(ceil_sqrt(z) * (x + 2)) + 2 * (p + 1)


def pack_subwalls(w: Wall, cp: CanonicalPartition, z: int, x: int, p: int,
                  region: Optional[Callable[[Wall], Set[int]]] = None) -> List[Wall]:
    """``z`` central x-subwalls of a grid of (x+2)-subwalls inside the central part of ``w``.

    ``region`` maps a subwall to the vertex set whose bags are checked for
    overlap (by default the subwall's own vertices; flatness callers pass
    the influence).
    """
    if z < 1 or p < 1 or x < 3 or x % 2 == 0:
        raise InvalidArgument("packing needs z >= 1, p >= 1 and an odd x >= 3")
    need = packing_height(z, x, p)
    if w.height < need:
        raise InvalidArgument(f"packing {z} {x}-subwalls at depth {p} needs height {need}, wall has {w.height}")
    side = ceil_sqrt(z)
    inner = w.central_subwall(odd(side * (x + 2)))
    walls = []
    for slot in range(z):
        a, b = slot % side, slot // side
        c0, r0 = 1 + a * (x + 2), 1 + b * (x + 2)
        outer = inner.subwall((c0, c0 + x + 1), (r0, r0 + x + 1))
        walls.append(outer.central_subwall(x))
    region = region or (lambda sub: sub.vertices())
    allowed = set().union(*(cp.internal[k] for k in cp.internal_at_depth(w, p))) if cp.internal else set()
    touched: List[Set[BagIndex]] = []
    for sub in walls:
        vs = region(sub)
        if not vs <= allowed:
            raise ConstructionBug("a packed subwall leaves the p-internal bags")
        touched.append({k for k, bag in cp.internal.items() if bag & vs})
    for s in range(z):
        for t in range(s + 1, z):
            if touched[s] & touched[t]:
                raise ConstructionBug(f"packed subwalls {s} and {t} share an internal bag")
    logger.debug("packed %d %d-subwalls into a %d-wall", z, x, w.height)
    return walls
