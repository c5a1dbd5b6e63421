# src/minorkit/core/boundaried.py

"""Boundaried graphs, folios, representatives and characteristics.

A t-boundaried graph carries t labelled boundary vertices: ``boundary[i]``
is the vertex labelled ``i + 1``. Two boundaried graphs are isomorphic
when an isomorphism of the underlying graphs keeps every label, so the
canonical key of the graph coloured by label identifies the class.

The equivalence behind representatives and characteristics compares minor
profiles against every compatible context with at most ``c`` vertices, not
against all contexts. Classes that an unbounded test would keep apart may
therefore merge.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .. import config
from ..errors import InvalidArgument, NotFound, ResourceLimit
from ..utils.graph_io import parse_graph6, to_graph6
from ..utils.schemas import BoundaryDocument, RepresentativeTable
from .bounds import BoundParams, evaluate
from .canonical import Key, canonical_key, canonical_labeling
from .flatness import FlatnessCertificate, Verdict, _cell, influence, validate_flatness
from .graph import Edge, Graph, delete_vertices, induced_subgraph
from .minors import colored_minor, is_minor
from .obstructions import enumerate_graphs
from .walls import Wall

logger = logging.getLogger(__name__)

Profile = Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class BoundariedGraph:
    g: Graph
    boundary: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        if len(set(self.boundary)) != len(self.boundary):
            raise InvalidArgument("boundary vertices must be distinct")
        for v in self.boundary:
            if not 0 <= v < self.g.n:
                raise InvalidArgument(f"boundary vertex {v} is not a vertex of the graph")

    @property
    def t(self) -> int:
        return len(self.boundary)

    @property
    def rho(self) -> Dict[int, int]:
        return {v: i + 1 for i, v in enumerate(self.boundary)}

    def colors(self) -> List[int]:
        colors = [0] * self.g.n
        for i, v in enumerate(self.boundary):
            colors[v] = i + 1
        return colors

    def key(self) -> Key:
        return canonical_key(self.g, self.colors())

    def interior(self) -> List[int]:
        inside = set(self.boundary)
        return [v for v in self.g.vertices if v not in inside]

    def detail(self) -> int:
        return max(self.g.m, self.g.n - self.t)

    def boundary_edges(self) -> FrozenSet[Edge]:
        """Label pairs ``(i, j)``, ``i < j``, whose boundary vertices are adjacent."""
        return frozenset(
            (i + 1, j + 1)
            for i, j in itertools.combinations(range(self.t), 2)
            if self.g.has_edge(self.boundary[i], self.boundary[j])
        )

    def delete(self, vertices: Iterable[int]) -> "BoundariedGraph":
        """Remove ``vertices``; surviving labels are renumbered by rank."""
        gone = set(vertices)
        rest, index = delete_vertices(self.g, gone)
        return BoundariedGraph(rest, tuple(index[v] for v in self.boundary if v not in gone))

    def canonical(self) -> "BoundariedGraph":
        order = canonical_labeling(self.g, self.colors()).order
        pos = {v: i for i, v in enumerate(order)}
        g = Graph(self.g.n, ((pos[a], pos[b]) for a, b in self.g.edges()))
        return BoundariedGraph(g, tuple(pos[v] for v in self.boundary))

    def code(self) -> str:
        c = self.canonical()
        return f"{to_graph6(c.g)}|{','.join(map(str, c.boundary))}"

    def to_document(self) -> BoundaryDocument:
        return BoundaryDocument(graph6=to_graph6(self.g), boundary=list(self.boundary))

    @classmethod
    def from_document(cls, doc: BoundaryDocument) -> "BoundariedGraph":
        return cls(parse_graph6(doc.graph6), tuple(doc.boundary))

    def __repr__(self) -> str:
        return f"BoundariedGraph(n={self.g.n}, m={self.g.m}, boundary={list(self.boundary)})"


def forget_boundary(bg: BoundariedGraph) -> Graph:
    return bg.g


def restrict_boundary(bg: BoundariedGraph, keep: Iterable[int]) -> BoundariedGraph:
    """Keep only the boundary vertices in ``keep``; labels become their rank among the kept ones."""
    kept = set(keep)
    if not kept <= set(bg.boundary):
        raise InvalidArgument("can only keep vertices of the boundary")
    return BoundariedGraph(bg.g, tuple(v for v in bg.boundary if v in kept))


def compatible(g1: BoundariedGraph, g2: BoundariedGraph) -> bool:
    return g1.t == g2.t and g1.boundary_edges() == g2.boundary_edges()


def _glue(g1: BoundariedGraph, g2: BoundariedGraph) -> Tuple[Graph, List[int]]:
    if not compatible(g1, g2):
        raise InvalidArgument("boundaried graphs are not compatible")
    ids = [-1] * g2.g.n
    for i, v in enumerate(g2.boundary):
        ids[v] = g1.boundary[i]
    nxt = g1.g.n
    for v in g2.g.vertices:
        if ids[v] < 0:
            ids[v] = nxt
            nxt += 1
    edges = set(g1.g.edges())
    for a, b in g2.g.edges():
        x, y = ids[a], ids[b]
        edges.add((min(x, y), max(x, y)))
    return Graph(nxt, edges), ids


def glue(g1: BoundariedGraph, g2: BoundariedGraph) -> Graph:
    """Disjoint union with equally labelled boundary vertices identified.

    Vertices of ``g1`` keep their ids; interior vertices of ``g2`` follow.
    """
    return _glue(g1, g2)[0]


def boundaried_minor(h: BoundariedGraph, g: BoundariedGraph, max_states: Optional[int] = None) -> bool:
    """Whether ``h`` arises from ``g`` without deleting or merging boundary vertices.

    Contractions into a boundary vertex keep the boundary vertex.
    """
    if h.t != g.t:
        raise InvalidArgument(f"boundary sizes differ: {h.t} and {g.t}")
    if h.g.n == 0:
        return True
    return colored_minor(h.g, g.g, h.colors(), g.colors(), absorb=True, max_states=max_states) is not None


# ---------------------------------------------------------------------------
# folios


@dataclass(frozen=True)
class Folio:
    t: int
    ell: int
    members: FrozenSet[Key]
    graphs: Tuple[BoundariedGraph, ...] = field(default=(), compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, bg: BoundariedGraph) -> bool:
        return bg.key() in self.members


class _Router:
    """Internally disjoint paths between terminals, avoiding all other terminals."""

    def __init__(self, g: Graph, max_steps: Optional[int] = None):
        self.g = g
        self.limit = config.budget("tm_steps", max_steps)
        self.steps = 0

    def _tick(self):
        self.steps += 1
        if self.steps > self.limit:
            raise ResourceLimit(f"folio routing exceeded {self.limit} steps", budget=self.limit)

    def _paths(self, a: int, b: int, blocked) -> Iterator[Tuple[int, ...]]:
        stack = [(a, (a,))]
        while stack:
            u, path = stack.pop()
            self._tick()
            for w in reversed(self.g.neighbors(u)):
                if w == b:
                    yield path + (b,)
                elif w not in blocked and w not in path:
                    stack.append((w, path + (w,)))

    def realizable(self, terminals: Sequence[int], pairs: Sequence[Edge]) -> bool:
        fixed = frozenset(terminals)

        def route(i: int, used: FrozenSet[int]) -> bool:
            if i == len(pairs):
                return True
            a, b = pairs[i]
            for path in self._paths(terminals[a], terminals[b], fixed | used):
                if route(i + 1, used | frozenset(path[1:-1])):
                    return True
            return False

        return route(0, frozenset())

    def patterns(self, terminals: Sequence[int], ell: int) -> Iterator[Tuple[Edge, ...]]:
        """Every set of at most ``ell`` terminal pairs joined by disjoint paths; realizable sets are downward closed."""
        pairs = list(itertools.combinations(range(len(terminals)), 2))

        def grow(pattern: Tuple[Edge, ...], start: int):
            yield pattern
            if len(pattern) == ell:
                return
            for idx in range(start, len(pairs)):
                trial = pattern + (pairs[idx],)
                if self.realizable(terminals, trial):
                    yield from grow(trial, idx + 1)

        yield from grow((), 0)


def folio(bg: BoundariedGraph, ell: int, max_vertices: Optional[int] = None, max_detail: Optional[int] = None,
          max_steps: Optional[int] = None) -> Folio:
    """All boundaried topological minors of ``bg`` with detail at most ``ell``.

    Each member is read off a choice of branch vertices ``T`` containing the
    boundary and a set of terminal pairs linked by internally disjoint
    paths whose inner vertices avoid ``T``.
    """
    if ell < 0:
        raise InvalidArgument("detail must be nonnegative")
    limit_n = config.budget("folio_max_vertices", max_vertices)
    limit_l = config.budget("folio_max_detail", max_detail)
    if bg.g.n > limit_n:
        raise ResourceLimit(f"folios limited to graphs with {limit_n} vertices", budget=limit_n)
    if ell > limit_l:
        raise ResourceLimit(f"folios limited to detail {limit_l}", budget=limit_l)
    router = _Router(bg.g, max_steps)
    found: Dict[Key, BoundariedGraph] = {}
    interior = bg.interior()
    for extra in range(min(ell, len(interior)) + 1):
        for chosen in itertools.combinations(interior, extra):
            terminals = bg.boundary + chosen
            for pattern in router.patterns(terminals, ell):
                member = BoundariedGraph(Graph(len(terminals), pattern), tuple(range(bg.t)))
                found.setdefault(member.key(), member)
    logger.debug("folio of %r at detail %d: %d members, %d routing steps", bg, ell, len(found), router.steps)
    ordered = sorted(found)
    return Folio(bg.t, ell, frozenset(ordered), tuple(found[k] for k in ordered))


# ---------------------------------------------------------------------------
# bounded-context equivalence


@lru_cache(maxsize=None)
def _detail_graphs(h: int) -> Tuple[Graph, ...]:
    """Every graph with at least one vertex and detail at most ``h``."""
    out: List[Graph] = []
    for n in range(1, h + 1):
        out.extend(g for g in enumerate_graphs(n) if g.m <= h)
    return tuple(out)


@lru_cache(maxsize=None)
def _contexts(t: int, boundary_edges: FrozenSet[Edge], c: int) -> Tuple[BoundariedGraph, ...]:
    """One compatible context per isomorphism class, up to ``c`` vertices."""
    base = [(i - 1, j - 1) for i, j in sorted(boundary_edges)]
    seen: Dict[Key, BoundariedGraph] = {}
    for n in range(t, c + 1):
        free = [(u, v) for v in range(t, n) for u in range(v)]
        for mask in range(1 << len(free)):
            edges = base + [e for bit, e in enumerate(free) if mask >> bit & 1]
            ctx = BoundariedGraph(Graph(n, edges), tuple(range(t)))
            seen.setdefault(ctx.key(), ctx)
    return tuple(seen[k] for k in sorted(seen))


def _check_context(t: int, c: int) -> None:
    if c < t:
        raise InvalidArgument(f"context bound {c} is smaller than the boundary size {t}")
    limit = config.budget("boundaried_max_vertices")
    if c > limit:
        raise ResourceLimit(f"contexts limited to {limit} vertices", budget=limit)


@lru_cache(maxsize=1 << 14)
def _canonical_profile(bg: BoundariedGraph, h: int, c: int, max_states: Optional[int]) -> Profile:
    patterns = _detail_graphs(h)
    out = []
    for ctx in _contexts(bg.t, bg.boundary_edges(), c):
        host = glue(ctx, bg)
        hits = set()
        for i, H in enumerate(patterns):
            if H.n <= host.n and H.m <= host.m and is_minor(H, host, max_states) is not None:
                hits.add(i)
        out.append(frozenset(hits))
    return tuple(out)


def minor_profile(bg: BoundariedGraph, h: int, c: int, max_states: Optional[int] = None) -> Profile:
    """For each compatible context ``F`` with at most ``c`` vertices, the detail-``h`` graphs that are minors of ``F`` glued to ``bg``."""
    _check_context(bg.t, c)
    return _canonical_profile(bg.canonical(), h, c, max_states)


def _dominated(p1: Profile, p2: Profile) -> bool:
    return all(a <= b for a, b in zip(p1, p2))


def leq_h(g1: BoundariedGraph, g2: BoundariedGraph, h: int, c: int, max_states: Optional[int] = None) -> bool:
    """Every detail-``h`` minor of ``F + g1`` is one of ``F + g2``, for all contexts ``F`` up to ``c`` vertices."""
    if not compatible(g1, g2):
        raise InvalidArgument("boundaried graphs are not compatible")
    return _dominated(minor_profile(g1, h, c, max_states), minor_profile(g2, h, c, max_states))


def equivalent_h(g1: BoundariedGraph, g2: BoundariedGraph, h: int, c: int, max_states: Optional[int] = None) -> bool:
    if not compatible(g1, g2):
        return False
    return minor_profile(g1, h, c, max_states) == minor_profile(g2, h, c, max_states)


# ---------------------------------------------------------------------------
# representatives


def boundaried_graphs(t: int, n: int) -> Iterator[BoundariedGraph]:
    """Every t-boundaried graph on ``n`` vertices up to isomorphism, by increasing canonical key."""
    limit = config.budget("boundaried_max_vertices")
    if n > limit:
        raise ResourceLimit(f"boundaried graph enumeration limited to {limit} vertices", budget=limit)
    if n < t:
        return
    pairs = list(itertools.combinations(range(n), 2))
    seen: Dict[Key, BoundariedGraph] = {}
    for mask in range(1 << len(pairs)):
        bg = BoundariedGraph(Graph(n, (e for bit, e in enumerate(pairs) if mask >> bit & 1)), tuple(range(t)))
        seen.setdefault(bg.key(), bg)
    for key in sorted(seen):
        yield seen[key]


@dataclass(frozen=True)
class RepresentativeSet:
    t: int
    h: int
    size_bound: int
    context_bound: int
    members: Tuple[BoundariedGraph, ...]

    def __len__(self) -> int:
        return len(self.members)

    def profile(self, i: int, max_states: Optional[int] = None) -> Profile:
        return minor_profile(self.members[i], self.h, self.context_bound, max_states)

    def index_of(self, bg: BoundariedGraph, max_states: Optional[int] = None) -> int:
        """Position of the member equivalent to ``bg``."""
        prof = minor_profile(bg, self.h, self.context_bound, max_states)
        for i, rep in enumerate(self.members):
            if compatible(bg, rep) and self.profile(i, max_states) == prof:
                return i
        raise NotFound(f"{bg!r} has no representative in this set")

    def to_table(self) -> RepresentativeTable:
        return RepresentativeTable(t=self.t, h=self.h, size_bound=self.size_bound, context_bound=self.context_bound,
                                   representatives=[r.to_document() for r in self.members])

    @classmethod
    def from_table(cls, table: RepresentativeTable) -> "RepresentativeSet":
        members = tuple(BoundariedGraph.from_document(d) for d in table.representatives)
        return cls(table.t, table.h, table.size_bound, table.context_bound, members)


def _profile_job(args) -> Profile:
    bg, h, c, max_states = args
    return minor_profile(bg, h, c, max_states)


def representatives(t: int, h: int, size_bound: int, c: int, workers: Optional[int] = None,
                    max_states: Optional[int] = None) -> RepresentativeSet:
    """One member per class of t-boundaried graphs with at most ``size_bound`` vertices.

    Each class keeps its smallest member, ties going to the least
    canonical key.
    """
    if t < 0 or h < 0:
        raise InvalidArgument("t and h must be nonnegative")
    if size_bound < t:
        raise InvalidArgument(f"size bound {size_bound} is smaller than the boundary size {t}")
    _check_context(t, c)
    workers = config.budget("workers", workers)
    candidates = [bg for n in range(t, size_bound + 1) for bg in boundaried_graphs(t, n)]
    jobs = [(bg, h, c, max_states) for bg in candidates]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            profiles = list(pool.map(_profile_job, jobs))
    else:
        profiles = [_profile_job(job) for job in jobs]
    classes: Dict[Tuple, BoundariedGraph] = {}
    for bg, prof in zip(candidates, profiles):
        classes.setdefault((bg.boundary_edges(), prof), bg)
    members = tuple(sorted(classes.values(), key=lambda bg: (bg.g.n, bg.key())))
    logger.info("t=%d h=%d: %d candidates fall into %d classes", t, h, len(candidates), len(members))
    return RepresentativeSet(t, h, size_bound, c, members)


def representative_tables(t: int, h: int, size_bound: int, c: int, workers: Optional[int] = None,
                          max_states: Optional[int] = None) -> Dict[int, RepresentativeSet]:
    """Representative sets for every boundary size from 0 to ``t``."""
    return {s: representatives(s, h, size_bound, c, workers, max_states) for s in range(t + 1)}


# ---------------------------------------------------------------------------
# characteristics


PairKey = Tuple[Tuple[int, ...], int]


def characteristic_pairs(t: int, reps: Mapping[int, RepresentativeSet]) -> List[PairKey]:
    """The pairs ``(I, R)``: a label set and a representative index for boundary size ``t - |I|``."""
    out = []
    for size in range(t + 1):
        if t - size not in reps:
            raise InvalidArgument(f"no representatives for boundary size {t - size}")
        for labels in itertools.combinations(range(1, t + 1), size):
            out.extend((labels, i) for i in range(len(reps[t - size])))
    return out


@dataclass
class Characteristic:
    k: int
    h: int
    t: int
    entries: Dict[PairKey, int]

    def vector(self) -> np.ndarray:
        return np.array([self.entries[key] for key in sorted(self.entries)], dtype=np.int64)

    def to_frame(self, reps: Mapping[int, RepresentativeSet]) -> pd.DataFrame:
        rows = [
            {"I": ",".join(map(str, labels)), "representative": reps[self.t - len(labels)].members[i].code(),
             "value": value}
            for (labels, i), value in sorted(self.entries.items())
        ]
        return pd.DataFrame(rows, columns=["I", "representative", "value"])


def characteristic(bg: BoundariedGraph, k: int, h: int, reps: Mapping[int, RepresentativeSet],
                   max_states: Optional[int] = None) -> Characteristic:
    """For each ``(I, R)`` the least ``|S| <= k`` with ``S`` meeting the boundary in labels ``I``
    and ``bg - S`` bounded by ``R``; ``k + 1`` when there is none."""
    if k < 0:
        raise InvalidArgument("k must be nonnegative")
    for size, rs in reps.items():
        if rs.h != h:
            raise InvalidArgument(f"representatives for boundary size {size} were built for h={rs.h}, not {h}")
    t = bg.t
    entries = {key: k + 1 for key in characteristic_pairs(t, reps)}
    interior = bg.interior()
    for size in range(min(t, k) + 1):
        rs = reps[t - size]
        for labels in itertools.combinations(range(1, t + 1), size):
            forced = [bg.boundary[i - 1] for i in labels]
            todo = set(range(len(rs)))
            for extra in range(k - size + 1):
                for chosen in itertools.combinations(interior, extra):
                    if not todo:
                        break
                    rest = bg.delete(forced + list(chosen))
                    prof = minor_profile(rest, h, rs.context_bound, max_states)
                    for i in sorted(todo):
                        if compatible(rest, rs.members[i]) and _dominated(prof, rs.profile(i, max_states)):
                            entries[(labels, i)] = size + extra
                            todo.discard(i)
    return Characteristic(k, h, t, entries)


def monotone_repeat(vectors: Sequence[Sequence[int]]) -> int:
    """First ``i`` with ``vectors[i] == vectors[i + 1]`` in a componentwise nondecreasing sequence."""
    arrays = [np.asarray(v) for v in vectors]
    for i in range(len(arrays) - 1):
        a, b = arrays[i], arrays[i + 1]
        if a.shape != b.shape:
            raise InvalidArgument("vectors differ in length")
        if np.any(a > b):
            raise InvalidArgument(f"vectors {i} and {i + 1} are not monotone")
        if np.array_equal(a, b):
            return i
    raise NotFound("no two consecutive vectors are equal")


def find_repeat(chain: Sequence[BoundariedGraph], k: int, h: int, reps: Mapping[int, RepresentativeSet],
                max_states: Optional[int] = None) -> int:
    """Index ``i`` such that ``chain[i]`` and ``chain[i + 1]`` have equal characteristics.

    ``chain`` must be ordered by boundaried minors, which makes the
    characteristic vectors nondecreasing.
    """
    if len({bg.t for bg in chain}) > 1:
        raise InvalidArgument("chain mixes boundary sizes")
    vectors = [characteristic(bg, k, h, reps, max_states).vector() for bg in chain]
    try:
        return monotone_repeat(vectors)
    except NotFound:
        pairs = len(characteristic_pairs(chain[0].t, reps)) if chain else 0
        needed = evaluate("repeat_length", BoundParams(k=k, y=pairs))
        raise NotFound(f"no repeated characteristic among {len(chain)} graphs; {needed} always suffice",
                       length=len(chain), needed=needed)


# ---------------------------------------------------------------------------
# augmented flaps and palettes


@dataclass
class ApexFlatnessPair:
    """A flat wall of ``g`` minus ``apices``.

    ``wall`` and ``cert`` use the ids of the remainder; ``ids[v]`` is the
    vertex of ``g`` behind remainder vertex ``v``.
    """

    g: Graph
    apices: Tuple[int, ...]
    wall: Wall
    cert: FlatnessCertificate
    ids: Tuple[int, ...]

    @classmethod
    def build(cls, g: Graph, apices: Iterable[int], wall: Wall, cert: FlatnessCertificate) -> "ApexFlatnessPair":
        apex = tuple(sorted(set(apices)))
        _, index = delete_vertices(g, apex)
        ids = tuple(old for old, _ in sorted(index.items(), key=lambda kv: kv[1]))
        return cls(g, apex, wall, cert, ids)

    def remainder(self) -> Graph:
        return delete_vertices(self.g, self.apices)[0]

    def validate(self) -> Verdict:
        return validate_flatness(self.remainder(), self.wall, self.cert)


def flap_order(cert: FlatnessCertificate, c: int, labels: Optional[Mapping[int, int]] = None) -> Tuple[int, ...]:
    """Base vertices of cell ``c`` counter-clockwise around the cell, starting at label 1.

    Without ``labels`` the smallest vertex gets label 1.
    """
    if c not in cert.painting.cells:
        raise InvalidArgument(f"unknown cell {c}")
    nodes = cert.painting.cells[c]
    if len(nodes) <= 1:
        return tuple(cert.pi[v] for v in nodes)
    clockwise = [int(label[1:]) for label in cert.embedding().neighbors_cw_order(_cell(c))]
    around = [cert.pi[v] for v in reversed(clockwise)]
    if labels is None:
        first = min(around)
    else:
        if set(labels) != set(around) or sorted(labels.values()) != list(range(1, len(around) + 1)):
            raise InvalidArgument(f"labels of cell {c} must number its base vertices from 1")
        first = next(v for v, lab in labels.items() if lab == 1)
    start = around.index(first)
    ordered = tuple(around[start:] + around[:start])
    if labels is not None and [labels[v] for v in ordered] != list(range(1, len(ordered) + 1)):
        raise InvalidArgument(f"labels of cell {c} do not follow the counter-clockwise order")
    return ordered


def augmented_flap(pair: ApexFlatnessPair, c: int, a_tilde: Sequence[int],
                   labels: Optional[Mapping[int, int]] = None) -> BoundariedGraph:
    """The flap of cell ``c`` with the apices ``a_tilde`` attached.

    Boundary labels run over ``a_tilde`` in the given order, then over the
    base of the flap counter-clockwise.
    """
    apex = list(a_tilde)
    if len(set(apex)) != len(apex) or not set(apex) <= set(pair.apices):
        raise InvalidArgument("augmenting set must consist of distinct apices")
    flap = pair.cert.sigma[c]
    base = flap_order(pair.cert, c, labels)
    keep = {pair.ids[v] for v in flap.vertices | set(base)} | set(apex)
    sub, order = induced_subgraph(pair.g, keep)
    pos = {old: new for new, old in enumerate(order)}
    return BoundariedGraph(sub, tuple(pos[a] for a in apex) + tuple(pos[pair.ids[v]] for v in base))


class _FlapFolios:
    """Folios of augmented flaps, computed once per (cell, apex set)."""

    def __init__(self, pair: ApexFlatnessPair, ell: int, labelings: Optional[Mapping[int, Mapping[int, int]]] = None):
        self.pair = pair
        self.ell = ell
        self.labelings = labelings or {}
        self.known: Dict[Tuple[int, Tuple[int, ...]], Folio] = {}

    def get(self, c: int, a_tilde: Tuple[int, ...]) -> Folio:
        key = (c, a_tilde)
        if key not in self.known:
            bg = augmented_flap(self.pair, c, a_tilde, self.labelings.get(c))
            self.known[key] = folio(bg, self.ell)
        return self.known[key]

    def palette(self, cycle: Optional[Sequence[int]], a_tilde: Tuple[int, ...]) -> FrozenSet[Folio]:
        flaps = influence(self.pair.cert, self.pair.wall, cycle)
        return frozenset(self.get(c, a_tilde) for c in sorted(flaps))


def palette(pair: ApexFlatnessPair, cycle: Optional[Sequence[int]], a_tilde: Sequence[int], ell: int,
            labelings: Optional[Mapping[int, Mapping[int, int]]] = None) -> FrozenSet[Folio]:
    """Folios of the augmented flaps influenced by ``cycle`` (default: the wall perimeter)."""
    return _FlapFolios(pair, ell, labelings).palette(cycle, tuple(a_tilde))


def is_homogeneous(pair: ApexFlatnessPair, family: Iterable[Sequence[int]], ell: int,
                   labelings: Optional[Mapping[int, Mapping[int, int]]] = None) -> bool:
    """Whether all internal bricks share one palette, for every apex set in ``family``."""
    folios = _FlapFolios(pair, ell, labelings)
    bricks = pair.wall.internal_bricks()
    for a_tilde in family:
        seen = set()
        for index, cycle in sorted(bricks.items()):
            seen.add(folios.palette(cycle, tuple(a_tilde)))
            if len(seen) > 1:
                logger.info("brick %s breaks homogeneity for apex set %s", index, list(a_tilde))
                return False
    return True


def flap_coloring(pair: ApexFlatnessPair, a_tilde_max: int, ell: int,
                  labelings: Optional[Mapping[int, Mapping[int, int]]] = None) -> Dict[int, int]:
    """Colour each flap by the folios of all its augmentations with at most ``a_tilde_max`` apices.

    Colours are numbered from 1 in order of first appearance over sorted cells.
    """
    folios = _FlapFolios(pair, ell, labelings)
    subsets = [s for size in range(a_tilde_max + 1) for s in itertools.combinations(pair.apices, size)]
    colors: Dict[Tuple, int] = {}
    out = {}
    for c in sorted(pair.cert.sigma):
        variety = tuple(folios.get(c, s).members for s in subsets)
        out[c] = colors.setdefault(variety, len(colors) + 1)
    return out
