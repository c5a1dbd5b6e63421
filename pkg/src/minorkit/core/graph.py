# src/minorkit/core/graph.py

"""Simple undirected graphs over the contiguous ids ``0..n-1``.

Graphs are immutable. Every mutation primitive returns a new graph; when
vertices disappear the surviving ids are compacted by shifting higher ids
down, which keeps the relative order of the survivors.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..errors import InvalidArgument

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class Graph:
    __slots__ = ("_n", "_adj", "_m", "_masks", "_sets", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InvalidArgument(f"vertex count must be nonnegative, got {n}")
        sets: List[Set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidArgument(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge ({u}, {v}) out of range for n={n}")
            sets[u].add(v)
            sets[v].add(u)
        self._n = n
        self._adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in sets)
        self._m = sum(len(s) for s in sets) // 2
        self._masks: Optional[Tuple[int, ...]] = None
        self._sets: Optional[Tuple[FrozenSet[int], ...]] = None
        self._hash: Optional[int] = None

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adjacency), ((u, v) for u, nbrs in enumerate(adjacency) for v in nbrs if u < v))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        edges = []
        for u, mask in enumerate(masks):
            rest = mask >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    edges.append((u, v))
                rest >>= 1
                v += 1
        return cls(n, edges)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(a) for a in self._adj]

    def neighbor_set(self, v: int) -> FrozenSet[int]:
        if self._sets is None:
            self._sets = tuple(frozenset(a) for a in self._adj)
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self._n and 0 <= v < self._n):
            return False
        return v in self.neighbor_set(u)

    def edges(self) -> List[Edge]:
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    def mask(self, v: int) -> int:
        return self.masks()[v]

    def masks(self) -> Tuple[int, ...]:
        """Per-vertex neighbourhood bitsets as Python ints, computed on first use."""
        if self._masks is None:
            out = []
            for nbrs in self._adj:
                m = 0
                for w in nbrs:
                    m |= 1 << w
                out.append(m)
            self._masks = tuple(out)
        return self._masks

    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        return self._adj

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


@dataclass(frozen=True)
class ContractionWitness:
    """A minor model: target vertex ``i`` is realized by ``branch_sets[i]`` in the source."""

    target: Graph
    branch_sets: Tuple[FrozenSet[int], ...]
    meta: Dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.branch_sets) != self.target.n:
            raise InvalidArgument(
                f"witness has {len(self.branch_sets)} branch sets for {self.target.n} target vertices"
            )

    def owner(self) -> Dict[int, int]:
        """Map each covered source vertex to its target vertex."""
        return {v: t for t, bs in enumerate(self.branch_sets) for v in bs}

    def covered(self) -> Set[int]:
        return set().union(*self.branch_sets) if self.branch_sets else set()


def check_model(source: Graph, witness: ContractionWitness, fixed: Iterable[int] = (),
                spanning: bool = False) -> Optional[str]:
    """Return ``None`` if ``witness`` is a valid model in ``source``, else the first failure."""
    seen: Set[int] = set()
    for t, bs in enumerate(witness.branch_sets):
        if not bs:
            return f"branch set {t} is empty"
        if any(not (0 <= v < source.n) for v in bs):
            return f"branch set {t} holds an unknown vertex"
        if seen & bs:
            return f"branch set {t} overlaps an earlier branch set"
        seen |= bs
        if not is_connected_subset(source, bs):
            return f"branch set {t} is not connected"
    owner = witness.owner()
    realized = set()
    for u, v in source.edges():
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            realized.add((min(a, b), max(a, b)))
    for e in witness.target.edges():
        if e not in realized:
            return f"target edge {e} is not realized"
    for v in fixed:
        t = owner.get(v)
        if t is None:
            return f"fixed vertex {v} is not covered"
        if len(witness.branch_sets[t]) != 1:
            return f"fixed vertex {v} is contracted into branch set {t}"
    if spanning and len(seen) != source.n:
        return "witness does not cover every source vertex"
    return None


def is_connected_subset(g: Graph, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    if not vs:
        return True
    start = next(iter(vs))
    stack, seen = [start], {start}
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def components(g: Graph) -> List[List[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bfs_distances(g: Graph, sources: Iterable[int], allowed: Optional[Set[int]] = None) -> Dict[int, int]:
    dist = {}
    queue = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# ---------------------------------------------------------------------------
# mutation primitives


def _check_vertex(g: Graph, v: int):
    if not (0 <= v < g.n):
        raise InvalidArgument(f"vertex {v} not in graph with {g.n} vertices")


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract ``uv``; the merged vertex keeps id ``min(u, v)`` and parallel edges collapse."""
    if not g.has_edge(u, v):
        raise InvalidArgument(f"({u}, {v}) is not an edge")
    keep, gone = min(u, v), max(u, v)

    def shift(x: int) -> int:
        x = keep if x == gone else x
        return x - 1 if x > gone else x

    edges = set()
    for a, b in g.edges():
        a2, b2 = shift(a), shift(b)
        if a2 != b2:
            edges.add((min(a2, b2), max(a2, b2)))
    return Graph(g.n - 1, edges)


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Delete ``vertices``; returns the new graph and the old-to-new id map of survivors."""
    gone = set(vertices)
    for v in gone:
        _check_vertex(g, v)
    keep = [v for v in range(g.n) if v not in gone]
    return induced_subgraph(g, keep)[0], {old: new for new, old in enumerate(keep)}


def delete_vertex(g: Graph, v: int) -> Graph:
    return delete_vertices(g, [v])[0]


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, List[int]]:
    """Subgraph induced by ``vertices``; new id ``i`` is old id ``order[i]`` (ascending)."""
    order = sorted(set(vertices))
    for v in order:
        _check_vertex(g, v)
    index = {old: new for new, old in enumerate(order)}
    edges = [(index[a], index[b]) for a in order for b in g.neighbors(a) if a < b and b in index]
    return Graph(len(order), edges), order


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise InvalidArgument(f"({u}, {v}) is not an edge")
    return Graph(g.n, (e for e in g.edges() if e != (min(u, v), max(u, v))))


def add_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    return Graph(g.n, list(g.edges()) + [tuple(e) for e in edges])


def dissolve_vertex(g: Graph, v: int) -> Graph:
    """Remove a degree-2 vertex and join its two neighbours."""
    _check_vertex(g, v)
    if g.degree(v) != 2:
        raise InvalidArgument(f"vertex {v} has degree {g.degree(v)}, dissolution needs degree 2")
    a, b = g.neighbors(v)
    h, index = delete_vertices(g, [v])
    if h.has_edge(index[a], index[b]):
        return h
    return add_edges(h, [(index[a], index[b])])


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    """Replace ``uv`` by a path through a new vertex with id ``n``."""
    if not g.has_edge(u, v):
        raise InvalidArgument(f"({u}, {v}) is not an edge")
    w = g.n
    edges = [e for e in g.edges() if e != (min(u, v), max(u, v))]
    return Graph(g.n + 1, edges + [(u, w), (v, w)])


def detail(g: Graph) -> int:
    return max(g.m, g.n)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Rename vertex ``v`` to ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise InvalidArgument("relabelling is not a permutation")
    return Graph(g.n, ((perm[a], perm[b]) for a, b in g.edges()))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges.extend((a + offset, b + offset) for a, b in h.edges())
        offset += h.n
    return Graph(offset, edges)


def complement(g: Graph) -> Graph:
    return Graph(g.n, ((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)))


def quotient(g: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Graph on the parts with an edge wherever ``g`` has an edge between two parts."""
    owner = {v: i for i, part in enumerate(parts) for v in part}
    edges = set()
    for a, b in g.edges():
        i, j = owner.get(a), owner.get(b)
        if i is not None and j is not None and i != j:
            edges.add((min(i, j), max(i, j)))
    return Graph(len(parts), edges)


# ---------------------------------------------------------------------------
# standard graphs


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def grid_graph(k: int, r: int) -> Graph:
    """The ``k`` x ``r`` grid; vertex ``(x, y)`` (1-based) has id ``(y-1)*k + (x-1)``."""
    if k < 1 or r < 1:
        raise InvalidArgument(f"grid dimensions must be positive, got {k}x{r}")
    edges = []
    for y in range(r):
        for x in range(k):
            v = y * k + x
            if x + 1 < k:
                edges.append((v, v + 1))
            if y + 1 < r:
                edges.append((v, v + k))
    return Graph(k * r, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def subdivide_all(g: Graph, times: int = 1) -> Graph:
    """Subdivide every edge ``times`` times."""
    n = g.n
    edges = []
    for a, b in g.edges():
        prev = a
        for _ in range(times):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, b))
    return Graph(n, edges)


def iter_edge_subsets(g: Graph) -> Iterator[Graph]:
    """Every spanning subgraph of ``g``."""
    edges = g.edges()
    for bits in range(1 << len(edges)):
        yield Graph(g.n, (e for i, e in enumerate(edges) if bits >> i & 1))
