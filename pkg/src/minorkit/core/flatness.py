# src/minorkit/core/flatness.py

"""Paintings, renditions and flatness certificates.

A painting is stored combinatorially: its nodes, its cells (each with at
most three nodes on its boundary), the nodes met along the boundary of the
disk, and optionally a rotation system of its radial graph. The radial
graph has a vertex ``n<id>`` per node, ``c<id>`` per cell and an edge for
each incidence; a ``hub`` vertex adjacent to every boundary node stands for
the outside of the disk.

Cells are classified against a cycle by tracing the cycle as a closed walk
in the radial graph and reading, from the rotation system, which side of
that walk every other piece lies on. The side holding the hub is the
outside.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..errors import ConstructionBug, InvalidArgument, Unsupported
from ..utils.schemas import (CellDocument, CertificateDocument, FlapDocument, FlatnessDocument, GraphDocument,
                             PaintingDocument)
from .graph import Edge, Graph, induced_subgraph
from .walls import Wall, is_tilt

logger = logging.getLogger(__name__)

HUB = "hub"

PERIMETRIC = "perimetric"
INTERNAL = "internal"
EXTERNAL = "external"


def _node(i: int) -> str:
    return f"n{i}"


def _cell(i: int) -> str:
    return f"c{i}"


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _same_cycle(a: Sequence, b: Sequence) -> bool:
    """Equal as cyclic orders, read in either direction."""
    if len(a) != len(b) or set(a) != set(b):
        return False
    if not a:
        return True
    i = list(a).index(b[0])
    forward = list(a[i:]) + list(a[:i])
    if forward == list(b):
        return True
    backward = [forward[0]] + list(reversed(forward[1:]))
    return backward == list(b)


@dataclass(frozen=True)
class Flap:
    vertices: FrozenSet[int]
    edges: FrozenSet[Edge] = frozenset()

    @classmethod
    def of_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> "Flap":
        es = frozenset(_edge(a, b) for a, b in edges)
        vs = set(vertices)
        for a, b in es:
            vs.update((a, b))
        return cls(frozenset(vs), es)


@dataclass
class Painting:
    nodes: Tuple[int, ...]
    cells: Dict[int, Tuple[int, ...]]
    boundary: Tuple[int, ...]
    rotation: Optional[Dict[str, Tuple[str, ...]]] = None

    def radial_graph(self, rim: bool = False) -> nx.Graph:
        """Radial graph plus hub; with ``rim`` also the boundary cycle between consecutive boundary nodes."""
        graph = nx.Graph()
        graph.add_node(HUB)
        graph.add_nodes_from(_node(v) for v in self.nodes)
        graph.add_nodes_from(_cell(c) for c in self.cells)
        for c, ns in self.cells.items():
            graph.add_edges_from((_cell(c), _node(v)) for v in ns)
        graph.add_edges_from((HUB, _node(v)) for v in self.boundary)
        if rim and len(self.boundary) >= 3:
            ring = list(self.boundary)
            graph.add_edges_from((_node(a), _node(b)) for a, b in zip(ring, ring[1:] + ring[:1]))
        return graph

    def problems(self) -> Optional[str]:
        """Structural defects, or ``None``."""
        if len(set(self.nodes)) != len(self.nodes):
            return "repeated node"
        known = set(self.nodes)
        for c, ns in self.cells.items():
            if len(ns) > 3:
                return f"cell {c} has {len(ns)} boundary nodes"
            if len(set(ns)) != len(ns) or not set(ns) <= known:
                return f"cell {c} lists unknown or repeated nodes"
        if len(set(self.boundary)) != len(self.boundary) or not set(self.boundary) <= known:
            return "boundary lists unknown or repeated nodes"
        return None

    def embedding(self) -> nx.PlanarEmbedding:
        """A plane embedding of the radial graph with hub, honoring the declared rotation if any."""
        problem = self.problems()
        if problem:
            raise InvalidArgument(problem)
        if self.rotation is None:
            ok, emb = nx.check_planarity(self.radial_graph(rim=True))
            if not ok:
                raise InvalidArgument("cells do not embed in a disk with the declared boundary order")
            return emb
        graph = self.radial_graph()
        if set(self.rotation) != set(graph.nodes):
            raise InvalidArgument("rotation does not list every radial vertex")
        for v, order in self.rotation.items():
            if len(order) != len(set(order)) or set(order) != set(graph[v]):
                raise InvalidArgument(f"rotation at {v} does not match its radial neighbors")
        emb = nx.PlanarEmbedding()
        emb.add_nodes_from(graph.nodes)
        emb.set_data({v: list(order) for v, order in self.rotation.items()})
        try:
            emb.check_structure()
        except nx.NetworkXException as exc:
            raise InvalidArgument(f"rotation is not a plane embedding: {exc}") from exc
        hub_order = [int(label[1:]) for label in emb.neighbors_cw_order(HUB)]
        if not _same_cycle(hub_order, list(self.boundary)):
            raise InvalidArgument("boundary nodes are not met in the declared order")
        return emb

    def to_document(self) -> PaintingDocument:
        return PaintingDocument(
            nodes=list(self.nodes),
            cells=[CellDocument(id=c, nodes=list(ns)) for c, ns in sorted(self.cells.items())],
            boundary=list(self.boundary),
            rotation=None if self.rotation is None else {k: list(v) for k, v in sorted(self.rotation.items())},
        )

    @classmethod
    def from_document(cls, doc: PaintingDocument) -> "Painting":
        rotation = None if doc.rotation is None else {k: tuple(v) for k, v in doc.rotation.items()}
        return cls(tuple(doc.nodes), {c.id: tuple(c.nodes) for c in doc.cells}, tuple(doc.boundary), rotation)


def _frozen_rotation(emb: nx.PlanarEmbedding, keep: Optional[Set[str]] = None,
                     drop_edges: Iterable[Tuple[str, str]] = ()) -> Dict[str, Tuple[str, ...]]:
    dropped = {frozenset(e) for e in drop_edges}
    out = {}
    for v in emb.nodes:
        if keep is not None and v not in keep:
            continue
        out[v] = tuple(u for u in emb.neighbors_cw_order(v)
                       if (keep is None or u in keep) and frozenset((u, v)) not in dropped)
    return out


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validation: ``failed`` names the first violated condition."""

    valid: bool
    failed: Optional[str] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def fail(cls, failed: str, message: str) -> "Verdict":
        return cls(False, failed, message)


def validate_rendition(g: Graph, omega: Sequence[int], painting: Painting, sigma: Dict[int, Flap],
                       pi: Dict[int, int], vertices: Optional[Iterable[int]] = None) -> Verdict:
    """Check that ``(painting, sigma, pi)`` is an omega-rendition of ``g`` (induced on ``vertices``).

    Conditions are checked in order: painting, pi, sigma, then the
    rendition axioms ``"1"`` to ``"5"``.
    """
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    try:
        painting.embedding()
    except InvalidArgument as exc:
        return Verdict.fail("painting", exc.message)

    if set(pi) != set(painting.nodes):
        return Verdict.fail("pi", "pi must be defined exactly on the nodes")
    if len(set(pi.values())) != len(pi):
        return Verdict.fail("pi", "pi is not injective")
    if not set(pi.values()) <= allowed:
        return Verdict.fail("pi", "pi maps a node outside the graph")

    if set(sigma) != set(painting.cells):
        return Verdict.fail("sigma", "sigma must be defined exactly on the cells")
    for c, flap in sigma.items():
        if not flap.vertices <= allowed:
            return Verdict.fail("sigma", f"flap of cell {c} leaves the graph")
        for a, b in flap.edges:
            if a not in flap.vertices or b not in flap.vertices or not g.has_edge(a, b):
                return Verdict.fail("sigma", f"flap of cell {c} is not a subgraph")

    induced = {e for e in g.edges() if e[0] in allowed and e[1] in allowed}
    covered_v: Set[int] = set()
    covered_e: Set[Edge] = set()
    for flap in sigma.values():
        covered_v |= flap.vertices
        covered_e |= flap.edges
    if covered_v != allowed or covered_e != induced:
        return Verdict.fail("1", "flaps do not cover the graph exactly")

    seen: Dict[Edge, int] = {}
    for c in sorted(sigma):
        for e in sigma[c].edges:
            if e in seen:
                return Verdict.fail("2", f"edge {e} lies in cells {seen[e]} and {c}")
            seen[e] = c

    for c, ns in painting.cells.items():
        if not {pi[v] for v in ns} <= sigma[c].vertices:
            return Verdict.fail("3", f"cell {c} does not contain its base")

    owners: Dict[int, int] = {}
    for flap in sigma.values():
        for v in flap.vertices:
            owners[v] = owners.get(v, 0) + 1
    for c in sorted(sigma):
        base = {pi[v] for v in painting.cells[c]}
        shared = {v for v in sigma[c].vertices if owners[v] > 1}
        if not shared <= base:
            return Verdict.fail("4", f"cell {c} shares {sorted(shared - base)} outside its base")

    if not _same_cycle([pi[v] for v in painting.boundary], list(omega)):
        return Verdict.fail("5", "boundary nodes do not map onto omega in order")
    return Verdict.ok()


@dataclass
class FlatnessCertificate:
    X: FrozenSet[int]
    Y: FrozenSet[int]
    pegs: FrozenSet[int]
    corners: FrozenSet[int]
    omega: Tuple[int, ...]
    painting: Painting
    sigma: Dict[int, Flap]
    pi: Dict[int, int]
    _embedding: Optional[nx.PlanarEmbedding] = field(default=None, repr=False, compare=False)

    def embedding(self) -> nx.PlanarEmbedding:
        if self._embedding is None:
            self._embedding = self.painting.embedding()
        return self._embedding

    def node_of(self) -> Dict[int, int]:
        return {v: node for node, v in self.pi.items()}

    def base(self, c: int) -> FrozenSet[int]:
        return frozenset(self.pi[v] for v in self.painting.cells[c])

    def to_document(self) -> CertificateDocument:
        return CertificateDocument(
            X=sorted(self.X), Y=sorted(self.Y), pegs=sorted(self.pegs), corners=sorted(self.corners),
            omega=list(self.omega), painting=self.painting.to_document(),
            sigma={c: FlapDocument(vertices=sorted(f.vertices), edges=sorted(f.edges)) for c, f in sorted(self.sigma.items())},
            pi=dict(sorted(self.pi.items())),
        )

    @classmethod
    def from_document(cls, doc: CertificateDocument) -> "FlatnessCertificate":
        return cls(
            X=frozenset(doc.X), Y=frozenset(doc.Y), pegs=frozenset(doc.pegs), corners=frozenset(doc.corners),
            omega=tuple(doc.omega), painting=Painting.from_document(doc.painting),
            sigma={int(c): Flap.of_edges(f.edges, f.vertices) for c, f in doc.sigma.items()},
            pi={int(k): v for k, v in doc.pi.items()},
        )


def validate_flatness(g: Graph, w: Wall, cert: FlatnessCertificate) -> Verdict:
    """Check that ``cert`` certifies ``w`` as a flat wall of ``g``."""
    everything = set(range(g.n))
    if set(cert.X) | set(cert.Y) != everything:
        return Verdict.fail("separation", "X and Y do not cover the graph")
    only_x, only_y = cert.X - cert.Y, cert.Y - cert.X
    for a, b in g.edges():
        if (a in only_x and b in only_y) or (a in only_y and b in only_x):
            return Verdict.fail("separation", f"edge {(a, b)} crosses the separation")
    if not w.vertices() <= cert.Y:
        return Verdict.fail("wall", "the wall is not inside Y")
    rim = w.perimeter()
    if set(cert.pegs) != set(w.pegs()) or set(cert.corners) != set(w.corners()):
        return Verdict.fail("pegs", "pegs and corners are not a choice for this wall")
    middle = cert.X & cert.Y
    if not (cert.pegs <= middle and middle <= set(rim)):
        return Verdict.fail("pegs", "X ∩ Y must contain the pegs and lie on the perimeter")
    if not _same_cycle([v for v in rim if v in middle], list(cert.omega)):
        return Verdict.fail("omega", "omega is not X ∩ Y in perimeter order")
    return validate_rendition(g, cert.omega, cert.painting, cert.sigma, cert.pi, vertices=cert.Y)


# ---------------------------------------------------------------------------
# cell classification


@dataclass(frozen=True)
class CellClassification:
    labels: Dict[int, str]
    marginal: FrozenSet[int]
    untidy: FrozenSet[int]
    curve: Tuple[str, ...]
    outside: bool

    def cells(self, label: str) -> List[int]:
        return sorted(c for c, lab in self.labels.items() if lab == label)


def _on_right(emb: nx.PlanarEmbedding, v: str, pred: str, succ: str, u: str) -> bool:
    """Whether ``u`` lies clockwise strictly between ``succ`` and ``pred`` around ``v``."""
    order = list(emb.neighbors_cw_order(v))
    start = order.index(succ)
    for step in range(1, len(order)):
        x = order[(start + step) % len(order)]
        if x == pred:
            return False
        if x == u:
            return True
    raise ConstructionBug(f"{u} is not a neighbor of {v}")


def _runs(cert: FlatnessCertificate, cycle: Sequence[int]) -> List[Tuple[int, List[int]]]:
    """Split the cycle into maximal subpaths inside one flap each."""
    owner: Dict[Edge, int] = {}
    for c, flap in cert.sigma.items():
        for e in flap.edges:
            owner[e] = c
    k = len(cycle)
    if k < 3:
        raise InvalidArgument("a cycle needs at least three vertices")
    cells = []
    for i in range(k):
        e = _edge(cycle[i], cycle[(i + 1) % k])
        if e not in owner:
            raise InvalidArgument(f"cycle edge {e} is in no flap")
        cells.append(owner[e])
    if len(set(cells)) == 1:
        raise InvalidArgument("the cycle lies inside a single flap")
    start = next(i for i in range(k) if cells[i] != cells[i - 1])
    runs: List[Tuple[int, List[int]]] = []
    for step in range(k):
        i = (start + step) % k
        if runs and runs[-1][0] == cells[i]:
            runs[-1][1].append(cycle[(i + 1) % k])
        else:
            runs.append((cells[i], [cycle[i], cycle[(i + 1) % k]]))
    if len({c for c, _ in runs}) != len(runs):
        raise InvalidArgument("the cycle meets some flap in more than one subpath")
    return runs


def classify_cells(cert: FlatnessCertificate, w: Wall, cycle: Optional[Sequence[int]] = None) -> CellClassification:
    """Label every cell perimetric, internal or external with respect to ``cycle``.

    ``cycle`` defaults to the perimeter of ``w``; ``w`` also decides which
    cells are untidy.
    """
    cycle = list(w.perimeter() if cycle is None else cycle)
    emb = cert.embedding()
    node_of = cert.node_of()
    runs = _runs(cert, cycle)

    curve: List[str] = []
    spikes: Dict[str, Tuple[str, str, str]] = {}
    for c, path in runs:
        p, q = path[0], path[-1]
        base = cert.base(c)
        if p not in base or q not in base:
            raise InvalidArgument(f"cell {c} meets the cycle away from its base")
        curve += [_node(node_of[p]), _cell(c)]
    for i, (c, path) in enumerate(runs):
        inner = set(path[1:-1])
        for z in cert.base(c) & inner:
            spikes[_node(node_of[z])] = (_cell(c), curve[2 * i], curve[(2 * i + 2) % len(curve)])

    on_curve = set(curve)
    position = {v: i for i, v in enumerate(curve)}

    def side_at(v: str, u: str) -> bool:
        i = position[v]
        return _on_right(emb, v, curve[i - 1], curve[(i + 1) % len(curve)], u)

    rest = nx.Graph(emb.to_undirected())
    rest.remove_nodes_from(on_curve | set(spikes))
    side_of: Dict[str, Optional[bool]] = {}
    for comp in nx.connected_components(rest):
        sides = set()
        for u in comp:
            for v in emb.neighbors_cw_order(u):
                if v in on_curve:
                    sides.add(side_at(v, u))
                elif v in spikes:
                    c, p, q = spikes[v]
                    sides.add(_on_right(emb, c, p, q, v))
        if len(sides) > 1:
            raise InvalidArgument("the cycle's curve does not separate the disk consistently")
        side = sides.pop() if sides else None
        for u in comp:
            side_of[u] = side
    outside = side_of[HUB]
    if outside is None:
        raise InvalidArgument("the cycle does not touch the rest of the painting")

    labels: Dict[int, str] = {}
    for c in cert.painting.cells:
        label = _cell(c)
        if label in on_curve:
            labels[c] = PERIMETRIC
        elif side_of.get(label) is None or side_of[label] == outside:
            labels[c] = EXTERNAL
        else:
            labels[c] = INTERNAL

    wall_edges = set(w.edges())
    wall_vertices = w.vertices()
    untidy = set()
    for c, flap in cert.sigma.items():
        for x in cert.base(c) & wall_vertices:
            if sum(1 for e in flap.edges if x in e and e in wall_edges) >= 2:
                untidy.add(c)
                break

    marginal = set()
    for i, (c, path) in enumerate(runs):
        base = cert.base(c)
        if c in untidy or len(base) != 3:
            continue
        (z,) = base - {path[0], path[-1]}
        if _node(node_of[z]) in spikes:
            continue
        if _on_right(emb, _cell(c), curve[2 * i], curve[(2 * i + 2) % len(curve)], _node(node_of[z])) == outside:
            marginal.add(c)
    return CellClassification(labels, frozenset(marginal), frozenset(untidy), tuple(curve), outside)


def influence(cert: FlatnessCertificate, w: Wall, cycle: Optional[Sequence[int]] = None) -> Dict[int, Flap]:
    """Flaps of the cells that are not external to ``cycle`` (default: the perimeter of ``w``)."""
    cls = classify_cells(cert, w, cycle)
    return {c: cert.sigma[c] for c, lab in cls.labels.items() if lab != EXTERNAL}


def compass(g: Graph, cert: FlatnessCertificate) -> Tuple[Graph, List[int]]:
    """The subgraph induced by ``Y``, with the original id of each new vertex."""
    return induced_subgraph(g, sorted(cert.Y))


def flap_bases(cert: FlatnessCertificate) -> Dict[int, FrozenSet[int]]:
    image = set(cert.pi.values())
    return {c: frozenset(flap.vertices & image) for c, flap in cert.sigma.items()}


def is_regular(cert: FlatnessCertificate, w: Wall) -> bool:
    cls = classify_cells(cert, w)
    return not cls.cells(EXTERNAL) and not cls.marginal and not cls.untidy


# ---------------------------------------------------------------------------
# construction


def trivial_certificate(g: Graph, w: Wall) -> FlatnessCertificate:
    """One cell per edge of ``g`` (and per isolated vertex), every vertex a node.

    ``X`` is the perimeter of ``w`` and ``Y`` is everything, so this only
    succeeds when ``g`` draws in a disk bounded by the perimeter.
    """
    rim = w.perimeter()
    cells: Dict[int, Tuple[int, ...]] = {}
    sigma: Dict[int, Flap] = {}
    for i, (a, b) in enumerate(g.edges()):
        cells[i] = (a, b)
        sigma[i] = Flap(frozenset((a, b)), frozenset({(a, b)}))
    nxt = len(cells)
    for v in g.vertices:
        if g.degree(v) == 0:
            cells[nxt] = (v,)
            sigma[nxt] = Flap(frozenset({v}))
            nxt += 1
    painting = Painting(tuple(range(g.n)), cells, tuple(rim))
    try:
        emb = painting.embedding()
    except InvalidArgument as exc:
        raise Unsupported(f"graph does not draw inside its wall perimeter: {exc.message}") from exc
    ring = [_node(v) for v in rim]
    rim_edges = list(zip(ring, ring[1:] + ring[:1]))
    painting.rotation = _frozen_rotation(emb, drop_edges=rim_edges)
    cert = FlatnessCertificate(
        X=frozenset(rim), Y=frozenset(range(g.n)), pegs=frozenset(w.pegs()), corners=frozenset(w.corners()),
        omega=tuple(rim), painting=painting, sigma=sigma, pi={v: v for v in range(g.n)},
    )
    logger.debug("trivial certificate with %d cells", len(cells))
    return cert


def _attach_hub(rotation: Dict[str, Tuple[str, ...]], curve: Sequence[str], outside: bool) -> Dict[str, Tuple[str, ...]]:
    """Put a fresh hub on the outer side of ``curve``, adjacent to its node vertices."""
    out = {v: tuple(o for o in order if o != HUB) for v, order in rotation.items() if v != HUB}
    ring = []
    k = len(curve)
    for i in range(0, k, 2):
        v, pred, succ = curve[i], curve[i - 1], curve[(i + 1) % k]
        order = list(out[v])
        anchor = succ if outside else pred
        order.insert(order.index(anchor) + 1, HUB)
        out[v] = tuple(order)
        ring.append(v)
    for hub_order in (ring, list(reversed(ring))):
        candidate = dict(out)
        candidate[HUB] = tuple(hub_order)
        emb = nx.PlanarEmbedding()
        emb.add_nodes_from(candidate)
        emb.set_data({v: list(o) for v, o in candidate.items()})
        try:
            emb.check_structure()
        except nx.NetworkXException:
            continue
        return candidate
    raise Unsupported("the restricted painting leaves no face for the new boundary")


def compute_tilt(g: Graph, w: Wall, cert: FlatnessCertificate, sub: Wall) -> Tuple[Wall, FlatnessCertificate]:
    """A tilt of ``(w, cert)`` at the subwall ``sub``.

    Only certificates whose ``sub``-perimetric cells are single edges are
    handled; others raise :class:`Unsupported`.
    """
    cls = classify_cells(cert, w, sub.perimeter())
    perimetric = cls.cells(PERIMETRIC)
    if any(len(cert.sigma[c].edges) != 1 for c in perimetric):
        raise Unsupported("tilts are computed only when the perimetric cells are single edges")
    keep = sorted(perimetric + cls.cells(INTERNAL))
    y_new: Set[int] = set()
    covered: Set[Edge] = set()
    for c in keep:
        y_new |= cert.sigma[c].vertices
        covered |= cert.sigma[c].edges
    stray = [e for e in g.edges() if e[0] in y_new and e[1] in y_new and e not in covered]
    if stray:
        raise Unsupported(f"edge {stray[0]} joins the new compass outside the influence")
    rim = sub.perimeter()
    node_of = cert.node_of()
    if any(v not in node_of for v in rim):
        raise ConstructionBug("a perimeter vertex of the subwall is not a node")
    nodes = sorted({v for c in keep for v in cert.painting.cells[c]} | {node_of[v] for v in rim})
    keep_labels = {_cell(c) for c in keep} | {_node(v) for v in nodes}
    rotation = _attach_hub(_frozen_rotation(cert.embedding(), keep=keep_labels), cls.curve, cls.outside)
    painting = Painting(tuple(nodes), {c: cert.painting.cells[c] for c in keep},
                        tuple(node_of[v] for v in rim), rotation)
    tilt = FlatnessCertificate(
        X=frozenset((set(range(g.n)) - y_new) | set(rim)), Y=frozenset(y_new),
        pegs=frozenset(sub.pegs()), corners=frozenset(sub.corners()), omega=tuple(rim),
        painting=painting, sigma={c: cert.sigma[c] for c in keep}, pi={v: cert.pi[v] for v in nodes},
    )
    verdict = validate_flatness(g, sub, tilt)
    if not verdict:
        raise ConstructionBug(f"tilt failed validation at {verdict.failed}: {verdict.message}")
    logger.debug("tilt keeps %d of %d cells", len(keep), len(cert.sigma))
    return sub, tilt


def check_tilt(g: Graph, w: Wall, cert: FlatnessCertificate, sub: Wall,
               tilt_wall: Wall, tilt: FlatnessCertificate) -> List[str]:
    """Names of the tilt conditions that fail; empty when ``(tilt_wall, tilt)`` is a tilt at ``sub``."""
    failures = []
    if not validate_flatness(g, tilt_wall, tilt):
        failures.append("flatness")
        return failures
    new_cls = classify_cells(tilt, tilt_wall)
    old_cls = classify_cells(cert, w, sub.perimeter())
    if new_cls.cells(EXTERNAL):
        failures.append("external")
    if not is_tilt(tilt_wall, sub):
        failures.append("interior")
    new_internal, old_internal = new_cls.cells(INTERNAL), old_cls.cells(INTERNAL)
    if new_internal != old_internal or any(tilt.sigma[c] != cert.sigma[c] for c in new_internal):
        failures.append("internal-cells")
    reach_v: Set[int] = set()
    reach_e: Set[Edge] = set()
    for c, lab in old_cls.labels.items():
        if lab != EXTERNAL:
            reach_v |= cert.sigma[c].vertices
            reach_e |= cert.sigma[c].edges
    tilt_edges = {e for e in g.edges() if e[0] in tilt.Y and e[1] in tilt.Y}
    if not (tilt.Y <= reach_v and tilt_edges <= reach_e):
        failures.append("compass")
    if any(len(ns) > 2 for c, ns in tilt.painting.cells.items() if c not in cert.painting.cells):
        failures.append("new-cells")
    return failures


def flatness_document(g: Graph, w: Wall, cert: FlatnessCertificate) -> FlatnessDocument:
    return FlatnessDocument(graph=GraphDocument(n=g.n, edges=g.edges()), wall=w.to_document(),
                            certificate=cert.to_document())


def load_flatness(doc: FlatnessDocument) -> Tuple[Graph, Wall, FlatnessCertificate]:
    g = Graph(doc.graph.n, [tuple(e) for e in doc.graph.edges])
    return g, Wall.from_document(doc.wall), FlatnessCertificate.from_document(doc.certificate)
