# src/minorkit/core/decomposition.py

"""Tree decompositions: validity, exact treewidth, rooting and linkedness.

Exact treewidth is the subset recurrence over elimination orderings:
``TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)`` where
``Q(S, v)`` are the vertices outside ``S + v`` reachable from ``v`` through
``S``. The minimising choices give an elimination ordering, and from it a
decomposition of the same width.

Disjoint-path questions go through a unit vertex-capacity flow network,
each vertex split into an ``in`` and an ``out`` copy.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from .. import config
from ..errors import ConstructionBug, InvalidArgument, ResourceLimit
from ..utils.graph_io import read_td, write_td
from .boundaried import BoundariedGraph
from .flatness import Verdict
from .graph import Edge, Graph, add_edges, induced_subgraph

logger = logging.getLogger(__name__)


@dataclass
class TreeDecomposition:
    bags: Dict[int, FrozenSet[int]]
    edges: List[Edge]
    root: Optional[int] = None

    def __post_init__(self):
        self.bags = {node: frozenset(bag) for node, bag in self.bags.items()}
        self.edges = [tuple(e) for e in self.edges]

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def tree(self) -> nx.Graph:
        t = nx.Graph()
        t.add_nodes_from(self.bags)
        t.add_edges_from(self.edges)
        return t

    def rooted(self, root: int) -> "TreeDecomposition":
        if root not in self.bags:
            raise InvalidArgument(f"{root} is not a node of the decomposition")
        return TreeDecomposition(dict(self.bags), list(self.edges), root)

    def parents(self) -> Dict[int, Optional[int]]:
        if self.root is None:
            raise InvalidArgument("decomposition is not rooted")
        parent: Dict[int, Optional[int]] = {self.root: None}
        for a, b in nx.bfs_edges(self.tree(), self.root, sort_neighbors=sorted):
            parent[b] = a
        return parent

    def children(self) -> Dict[int, List[int]]:
        kids: Dict[int, List[int]] = {node: [] for node in self.bags}
        for node, parent in self.parents().items():
            if parent is not None:
                kids[parent].append(node)
        return {node: sorted(ks) for node, ks in kids.items()}

    def order(self) -> List[int]:
        """Nodes in breadth-first order from the root."""
        return [self.root] + [b for _, b in nx.bfs_edges(self.tree(), self.root, sort_neighbors=sorted)]

    def descendants(self, q: int) -> Set[int]:
        kids = self.children()
        out, stack = set(), [q]
        while stack:
            node = stack.pop()
            out.add(node)
            stack.extend(kids[node])
        return out

    def below(self, q: int) -> FrozenSet[int]:
        """Vertices of the bags in the subtree at ``q``."""
        return frozenset().union(*(self.bags[node] for node in self.descendants(q)))

    def path(self, u: int, v: int) -> List[int]:
        return nx.shortest_path(self.tree(), u, v)

    def to_td(self, n: int) -> str:
        ids = {node: i for i, node in enumerate(self.nodes)}
        return write_td(n, {ids[node]: bag for node, bag in self.bags.items()},
                        [(ids[a], ids[b]) for a, b in self.edges])

    @classmethod
    def from_td(cls, text: str) -> Tuple[int, "TreeDecomposition"]:
        n, bags, edges = read_td(text)
        return n, cls(bags, edges)


def width(td: TreeDecomposition) -> int:
    return td.width()


def validate(td: TreeDecomposition, g: Graph, boundary: Optional[Iterable[int]] = None) -> Verdict:
    """Check ``td`` against ``g``; with ``boundary`` the root bag must equal it."""
    tree = td.tree()
    if g.n and not td.bags:
        return Verdict.fail("tree", "no bags")
    for a, b in td.edges:
        if a not in td.bags or b not in td.bags:
            return Verdict.fail("tree", f"tree edge ({a}, {b}) names an unknown node")
    if td.bags and not nx.is_tree(tree):
        return Verdict.fail("tree", "bags are not joined by a tree")
    owners: Dict[int, List[int]] = {v: [] for v in g.vertices}
    for node, bag in td.bags.items():
        for v in bag:
            if v not in owners:
                return Verdict.fail("vertices", f"bag {node} holds {v}, which is not a vertex")
            owners[v].append(node)
    for v, nodes in owners.items():
        if not nodes:
            return Verdict.fail("cover", f"vertex {v} is in no bag")
    for a, b in g.edges():
        if not any(b in td.bags[node] for node in owners[a]):
            return Verdict.fail("edges", f"edge ({a}, {b}) is in no bag")
    for v, nodes in owners.items():
        if len(nodes) > 1 and not nx.is_connected(tree.subgraph(nodes)):
            return Verdict.fail("connected", f"bags holding {v} are not connected")
    if td.root is not None and td.root not in td.bags:
        return Verdict.fail("root", f"root {td.root} is not a node")
    if boundary is not None:
        if td.root is None or td.bags[td.root] != frozenset(boundary):
            return Verdict.fail("root", "root bag is not the boundary")
    return Verdict.ok()


# ---------------------------------------------------------------------------
# exact treewidth


def _reach(adj: Sequence[int], inside: int, v: int) -> int:
    """Vertices outside ``inside`` and ``v`` reachable from ``v`` through ``inside``."""
    seen = 1 << v
    out = 0
    stack = [v]
    while stack:
        u = stack.pop()
        nbrs = adj[u] & ~seen
        seen |= nbrs
        out |= nbrs & ~inside
        through = nbrs & inside
        while through:
            low = through & -through
            stack.append(low.bit_length() - 1)
            through ^= low
    return out


def elimination_order(g: Graph, max_vertices: Optional[int] = None) -> Tuple[int, List[int]]:
    """Treewidth of ``g`` and an elimination ordering achieving it."""
    limit = config.budget("treewidth_max_vertices", max_vertices)
    if g.n > limit:
        raise ResourceLimit(f"exact treewidth limited to {limit} vertices", budget=limit)
    n = g.n
    if n == 0:
        return -1, []
    adj = g.masks()
    full = (1 << n) - 1
    tw = np.full(1 << n, n, dtype=np.int64)
    choice = np.zeros(1 << n, dtype=np.int64)
    tw[0] = -1
    for s in range(1, full + 1):
        best, pick = n, -1
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            value = max(int(tw[prev]), bin(_reach(adj, prev, v)).count("1"))
            if value < best:
                best, pick = value, v
        tw[s], choice[s] = best, pick
    order = []
    s = full
    while s:
        v = int(choice[s])
        order.append(v)
        s ^= 1 << v
    order.reverse()
    logger.debug("treewidth %d on %d vertices", int(tw[full]), n)
    return int(tw[full]), order


def treewidth_exact(g: Graph, max_vertices: Optional[int] = None) -> int:
    return elimination_order(g, max_vertices)[0]


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Elimination-ordering decomposition; node ``i`` holds the ``i``-th eliminated vertex and its later neighbours."""
    if sorted(order) != list(range(g.n)):
        raise InvalidArgument("elimination ordering must list every vertex once")
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(g.neighbors(v)) for v in g.vertices]
    bags: Dict[int, FrozenSet[int]] = {}
    edges: List[Edge] = []
    roots = []
    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        bags[pos[v]] = frozenset(later | {v})
        for u in later:
            adj[u] |= later - {u}
        if later:
            edges.append((pos[v], min(pos[u] for u in later)))
        else:
            roots.append(pos[v])
    # bags of different components share nothing, so their roots can be chained
    last = roots[-1] if roots else None
    edges.extend((r, last) for r in roots[:-1])
    return TreeDecomposition(bags, edges, last)


def optimal_decomposition(g: Graph, max_vertices: Optional[int] = None) -> TreeDecomposition:
    _, order = elimination_order(g, max_vertices)
    return decomposition_from_order(g, order)


# ---------------------------------------------------------------------------
# normal forms


def prune(td: TreeDecomposition, keep: Iterable[int] = ()) -> TreeDecomposition:
    """Contract every node whose bag is contained in a neighbouring bag.

    Nodes in ``keep`` are never removed; the root moves along when merged.
    """
    fixed = set(keep)
    tree = td.tree()
    bags = dict(td.bags)
    root = td.root
    changed = True
    while changed:
        changed = False
        for a, b in sorted(tree.edges):
            for small, big in ((a, b), (b, a)):
                if small in fixed or not bags[small] <= bags[big]:
                    continue
                for nb in list(tree.neighbors(small)):
                    if nb != big:
                        tree.add_edge(big, nb)
                tree.remove_node(small)
                del bags[small]
                if root == small:
                    root = big
                changed = True
                break
            if changed:
                break
    return TreeDecomposition(bags, sorted(tree.edges), root)


def make_binary_rooted(td: TreeDecomposition, root: Optional[int] = None) -> TreeDecomposition:
    """Root ``td`` and split every node with more than two children by copying its bag."""
    if root is None:
        root = td.root if td.root is not None else min(td.bags)
    rooted = td.rooted(root)
    kids = rooted.children()
    bags = dict(td.bags)
    edges: List[Edge] = []
    nxt = max(bags) + 1
    for node in rooted.order():
        pending = list(kids[node])
        holder = node
        while len(pending) > 2:
            copy = nxt
            nxt += 1
            bags[copy] = bags[node]
            edges.append((holder, pending.pop(0)))
            edges.append((holder, copy))
            holder = copy
        edges.extend((holder, k) for k in pending)
    return TreeDecomposition(bags, edges, root)


def boundaried_decomposition(bg: BoundariedGraph, max_vertices: Optional[int] = None) -> TreeDecomposition:
    """Rooted decomposition of ``bg`` whose root bag is the boundary.

    The boundary is made a clique before solving, so the width can exceed
    the treewidth of the underlying graph.
    """
    clique = [(a, b) for a, b in itertools.combinations(sorted(bg.boundary), 2) if not bg.g.has_edge(a, b)]
    td = optimal_decomposition(add_edges(bg.g, clique), max_vertices)
    boundary = frozenset(bg.boundary)
    if not td.bags:
        return TreeDecomposition({0: boundary}, [], 0)
    host = next((node for node in td.nodes if boundary <= td.bags[node]), None)
    if host is None:
        raise ConstructionBug("no bag holds the boundary clique")
    top = max(td.bags) + 1
    bags = dict(td.bags)
    bags[top] = boundary
    out = TreeDecomposition(bags, td.edges + [(top, host)], top)
    return prune(out, keep=[top])


def lower_graph(td: TreeDecomposition, g: Graph, q: int, order: Optional[Sequence[int]] = None) -> BoundariedGraph:
    """The graph induced by the bags below ``q``, with ``bag(q)`` as boundary (in ``order``)."""
    bag = td.bags[q]
    labels = list(order) if order is not None else sorted(bag)
    if set(labels) != bag:
        raise InvalidArgument("boundary order must list the bag")
    sub, ids = induced_subgraph(g, td.below(q))
    pos = {old: new for new, old in enumerate(ids)}
    return BoundariedGraph(sub, tuple(pos[v] for v in labels))


def upper_graph(td: TreeDecomposition, g: Graph, q: int, order: Optional[Sequence[int]] = None) -> BoundariedGraph:
    """``g`` without the vertices below ``q`` that are not in ``bag(q)``, with ``bag(q)`` as boundary."""
    bag = td.bags[q]
    labels = list(order) if order is not None else sorted(bag)
    if set(labels) != bag:
        raise InvalidArgument("boundary order must list the bag")
    gone = td.below(q) - bag
    sub, ids = induced_subgraph(g, [v for v in g.vertices if v not in gone])
    pos = {old: new for new, old in enumerate(ids)}
    return BoundariedGraph(sub, tuple(pos[v] for v in labels))


# ---------------------------------------------------------------------------
# disjoint paths


def _flow_network(g: Graph, X: Iterable[int], Y: Iterable[int]) -> nx.DiGraph:
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for v in g.vertices:
        net.add_edge(("in", v), ("out", v), capacity=1)
    for a, b in g.edges():
        net.add_edge(("out", a), ("in", b))
        net.add_edge(("out", b), ("in", a))
    for x in X:
        net.add_edge("s", ("in", x), capacity=1)
    for y in Y:
        net.add_edge(("out", y), "t", capacity=1)
    return net


def menger_number(g: Graph, X: Iterable[int], Y: Iterable[int]) -> int:
    """Largest number of vertex-disjoint ``X``-``Y`` paths."""
    net = _flow_network(g, X, Y)
    return int(nx.maximum_flow_value(net, "s", "t"))


def disjoint_paths(g: Graph, X: Iterable[int], Y: Iterable[int], s: int) -> Optional[List[List[int]]]:
    """``s`` vertex-disjoint paths from ``X`` to ``Y``, each meeting ``X`` and ``Y`` only at its ends, or ``None``."""
    xs, ys = set(X), set(Y)
    for v in xs | ys:
        if not 0 <= v < g.n:
            raise InvalidArgument(f"{v} is not a vertex")
    if s < 0:
        raise InvalidArgument("path count must be nonnegative")
    if s == 0:
        return []
    if s > min(len(xs), len(ys)):
        return None
    value, flow = nx.maximum_flow(_flow_network(g, xs, ys), "s", "t")
    if value < s:
        return None
    paths = []
    for x in sorted(xs):
        if flow["s"].get(("in", x), 0) <= 0:
            continue
        walk = [x]
        cur = x
        while True:
            nxt = next(w for w, units in flow[("out", cur)].items() if units > 0)
            if nxt == "t":
                break
            cur = nxt[1]
            walk.append(cur)
        end = next(i for i, v in enumerate(walk) if v in ys)
        start = max(i for i in range(end + 1) if walk[i] in xs)
        paths.append(walk[start:end + 1])
    paths.sort()
    return paths[:s]


# ---------------------------------------------------------------------------
# the linked-decomposition properties


@dataclass(frozen=True)
class LinkedVerdict:
    valid: bool
    pair: Optional[Tuple[int, int]] = None
    s: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


def check_linked(td: TreeDecomposition, g: Graph, s_max: Optional[int] = None) -> LinkedVerdict:
    """For every ancestor ``u1`` of ``u2`` with bags of equal size and every ``s``, either a bag on the
    path between them (ends included) has fewer than ``s`` vertices or ``s`` disjoint paths join the bags."""
    if td.root is None:
        raise InvalidArgument("linkedness is defined for rooted decompositions")
    parent = td.parents()
    flows: Dict[Tuple[FrozenSet[int], FrozenSet[int]], int] = {}
    for u2 in td.order():
        size = len(td.bags[u2])
        smallest = size
        u1 = parent[u2]
        while u1 is not None:
            smallest = min(smallest, len(td.bags[u1]))
            if len(td.bags[u1]) == size:
                need = smallest if s_max is None else min(smallest, s_max)
                key = (td.bags[u1], td.bags[u2])
                if key not in flows:
                    flows[key] = menger_number(g, td.bags[u1], td.bags[u2])
                if flows[key] < need:
                    s = flows[key] + 1
                    return LinkedVerdict(False, (u1, u2), s,
                                         f"bags {u1} and {u2} are joined by only {flows[key]} disjoint paths")
            u1 = parent[u1]
    return LinkedVerdict(True)


def check_binary(td: TreeDecomposition) -> Verdict:
    wide = [node for node, ks in td.children().items() if len(ks) > 2]
    if wide:
        return Verdict.fail("binary", f"node {wide[0]} has {len(td.children()[wide[0]])} children")
    return Verdict.ok()


def check_proper(td: TreeDecomposition) -> Verdict:
    """A child with a bag as large as its parent's sees strictly fewer vertices below it."""
    parent = td.parents()
    for a, b in sorted((a, b) for a, b in parent.items() if b is not None):
        if len(td.bags[a]) == len(td.bags[b]) and td.below(a) == td.below(b):
            return Verdict.fail("proper", f"node {a} adds nothing below its parent {b}")
    return Verdict.ok()


def check_size(td: TreeDecomposition, g: Graph) -> Verdict:
    if g.n > (td.width() + 1) * len(td.bags):
        return Verdict.fail("size", f"{g.n} vertices exceed {td.width() + 1} times {len(td.bags)} nodes")
    return Verdict.ok()


def refine_linked(td: TreeDecomposition, g: Graph, s_max: Optional[int] = None,
                  rounds: Optional[int] = None) -> Tuple[TreeDecomposition, LinkedVerdict]:
    """Best-effort repair: insert adhesion bags on paths that violate linkedness.

    For a violating pair joined by ``f`` disjoint paths, a tree edge on the
    path whose two bags share at most ``f`` vertices gets a new node holding
    that intersection. Stops when linked, when no such edge exists, or
    after ``rounds`` insertions.
    """
    rounds = len(td.bags) if rounds is None else rounds
    verdict = check_linked(td, g, s_max)
    for _ in range(rounds):
        if verdict.valid:
            break
        u1, u2 = verdict.pair
        walk = td.path(u1, u2)
        cut = next(((p, c) for p, c in zip(walk, walk[1:])
                    if len(td.bags[p] & td.bags[c]) < verdict.s), None)
        if cut is None:
            logger.info("no adhesion small enough between %d and %d", u1, u2)
            break
        p, c = cut
        node = max(td.bags) + 1
        bags = dict(td.bags)
        bags[node] = td.bags[p] & td.bags[c]
        edges = [e for e in td.edges if set(e) != {p, c}] + [(p, node), (node, c)]
        td = TreeDecomposition(bags, edges, td.root)
        verdict = check_linked(td, g, s_max)
    return td, verdict


def linked_decomposition(g: Graph, s_max: Optional[int] = None,
                         max_vertices: Optional[int] = None) -> Tuple[TreeDecomposition, LinkedVerdict]:
    """Optimal-width binary decomposition, refined towards linkedness; the verdict reports the outcome."""
    td = prune(optimal_decomposition(g, max_vertices))
    td = make_binary_rooted(td, td.root)
    td, verdict = refine_linked(td, g, s_max)
    if not verdict:
        logger.warning("decomposition is not linked: %s", verdict.message)
    return td, verdict


# ---------------------------------------------------------------------------
# words


def check_subword(word: Sequence[int], k: int, span: Tuple[int, int], m: int) -> bool:
    seg = np.asarray(word, dtype=np.int64)[span[0]:span[1]]
    return bool(np.all(seg >= k)) and int(np.count_nonzero(seg == k)) >= m


def pigeonhole_subword(word: Sequence[int], m: int, r: Optional[int] = None) -> Tuple[int, Tuple[int, int]]:
    """A letter ``k`` and a span ``[start, stop)`` holding only letters ``>= k`` and ``k`` at least ``m`` times.

    ``word`` is over ``1..r`` and must have length at least ``m ** r``.
    When ``k`` occurs fewer than ``m`` times it cuts the current span into
    at most ``m`` pieces, the longest of which has length at least
    ``m ** (r - k)``; the search continues there with ``k + 1``.
    """
    w = np.asarray(word, dtype=np.int64)
    if m < 1:
        raise InvalidArgument("m must be positive")
    if r is None:
        if not len(w):
            raise InvalidArgument("empty word")
        r = int(w.max())
    if len(w) and (int(w.min()) < 1 or int(w.max()) > r):
        raise InvalidArgument(f"letters must lie in 1..{r}")
    if len(w) < m ** r:
        raise InvalidArgument(f"word of length {len(w)} is shorter than {m}^{r}")
    lo, hi, k = 0, len(w), 1
    while True:
        hits = np.flatnonzero(w[lo:hi] == k) + lo
        if len(hits) >= m:
            break
        starts = [lo] + [int(i) + 1 for i in hits]
        stops = [int(i) for i in hits] + [hi]
        lo, hi = max(zip(starts, stops), key=lambda piece: (piece[1] - piece[0], -piece[0]))
        k += 1
        if k > r:
            raise ConstructionBug("ran out of letters")
    if not check_subword(w, k, (lo, hi), m):
        raise ConstructionBug(f"span [{lo}, {hi}) does not hold {k} {m} times")
    return k, (lo, hi)
