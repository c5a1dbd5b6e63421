# src/minorkit/core/minors.py

"""Minor and topological-minor containment, and F-hitting sets.

Minor search walks the space of graphs reachable from the host by vertex
deletions and edge contractions. Failed states are memoised by canonical
key, so each isomorphism class is expanded at most once per query. Once a
state has as many vertices as the pattern, the remaining edge deletions
are decided by a spanning-subgraph embedding.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .. import config
from ..errors import InvalidArgument, ResourceLimit
from .canonical import canonical_key
from .graph import (
    ContractionWitness,
    Graph,
    components,
    contract_edge,
    delete_vertices,
    induced_subgraph,
)
from .planarity import is_planar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorQuery:
    pattern: Graph
    host: Graph
    budget: Optional[int] = None

    def __post_init__(self):
        if self.pattern.n == 0:
            raise InvalidArgument("minor pattern must be nonempty")


@dataclass(frozen=True)
class HittingSet:
    vertices: FrozenSet[int]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(sorted(self.vertices))


def embed_spanning(pattern: Graph, host: Graph, pattern_colors: Optional[Sequence[int]] = None,
                   host_colors: Optional[Sequence[int]] = None) -> Optional[List[int]]:
    """Colour-preserving bijection ``p -> host vertex`` mapping pattern edges onto host edges."""
    if pattern.n != host.n or pattern.m > host.m:
        return None
    pc = list(pattern_colors) if pattern_colors is not None else [0] * pattern.n
    hc = list(host_colors) if host_colors is not None else [0] * host.n
    if sorted(pc) != sorted(hc):
        return None
    pd, hd = pattern.degrees(), host.degrees()
    if any(a > b for a, b in zip(sorted(pd, reverse=True), sorted(hd, reverse=True))):
        return None

    # place high-degree pattern vertices first, preferring ones adjacent to already placed vertices
    order: List[int] = []
    placed: Set[int] = set()
    while len(order) < pattern.n:
        best = max(
            (v for v in range(pattern.n) if v not in placed),
            key=lambda v: (sum(1 for w in pattern.neighbors(v) if w in placed), pd[v], -v),
        )
        order.append(best)
        placed.add(best)

    image = [-1] * pattern.n
    used = [False] * host.n
    hmasks = host.masks()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        need = 0
        for q in pattern.neighbors(p):
            if image[q] >= 0:
                need |= 1 << image[q]
        for cand in range(host.n):
            if used[cand] or hc[cand] != pc[p] or hd[cand] < pd[p]:
                continue
            if hmasks[cand] & need != need:
                continue
            image[p] = cand
            used[cand] = True
            if extend(i + 1):
                return True
            used[cand] = False
            image[p] = -1
        return False

    return image if extend(0) else None


class _MinorSearch:
    """Deletion/contraction search for a coloured minor model.

    Host vertices with a nonzero colour are never deleted and are never
    merged with each other; when ``absorb`` is false they are never merged
    at all (A-fixed minors).
    """

    def __init__(self, pattern: Graph, host: Graph, pattern_colors=None, host_colors=None,
                 absorb: bool = True, max_states: Optional[int] = None):
        self.pattern = pattern
        self.host = host
        self.pc = list(pattern_colors) if pattern_colors is not None else [0] * pattern.n
        self.hc = list(host_colors) if host_colors is not None else [0] * host.n
        self.colored = any(self.pc) or any(self.hc)
        self.absorb = absorb
        self.max_states = config.budget("minor_states", max_states)
        self.states = 0
        self.failed: Set = set()
        self.pattern_connected = len(components(pattern)) <= 1

    def run(self) -> Optional[ContractionWitness]:
        h, g = self.pattern, self.host
        if h.n > g.n or h.m > g.m:
            return None
        if sorted(c for c in self.pc if c) != sorted(c for c in self.hc if c):
            return None
        if not self.colored:
            fast = self._fast_path()
            if fast is not False:
                return fast
            if is_planar(g) and not is_planar(h):
                logger.debug("planar host cannot contain non-planar pattern %r", h)
                return None
        branches = tuple(frozenset([v]) for v in range(g.n))
        found = self._visit(g, self.hc, branches)
        logger.debug("minor search for %r in %r: %d states, found=%s", h, g, self.states, found is not None)
        if found is None:
            return None
        return ContractionWitness(target=h, branch_sets=found)

    def _fast_path(self):
        h, g = self.pattern, self.host
        if h.m == 0:
            return ContractionWitness(target=h, branch_sets=tuple(frozenset([v]) for v in range(h.n)))
        if h.n == 2 and h.m == 1:
            a, b = g.edges()[0]
            return ContractionWitness(target=h, branch_sets=(frozenset([a]), frozenset([b])))
        if h.n == 3 and h.m == 3:
            cycle = find_cycle(g)
            if cycle is None:
                return None
            cut = len(cycle) // 3
            parts = (cycle[:cut], cycle[cut:2 * cut], cycle[2 * cut:])
            return ContractionWitness(target=h, branch_sets=tuple(frozenset(p) for p in parts))
        return False

    def _visit(self, g: Graph, colors: List[int], branches) -> Optional[Tuple[FrozenSet[int], ...]]:
        h = self.pattern
        if g.m < h.m or g.n < h.n:
            return None
        key = canonical_key(g, colors)
        if key in self.failed:
            return None
        self.states += 1
        if self.states > self.max_states:
            raise ResourceLimit(f"minor search exceeded {self.max_states} states", budget=self.max_states)

        if g.n == h.n:
            image = embed_spanning(h, g, self.pc, colors)
            if image is not None:
                return tuple(branches[image[p]] for p in range(h.n))
            self.failed.add(key)
            return None

        if self.pattern_connected and not self.colored:
            comps = components(g)
            if len(comps) > 1:
                for comp in comps:
                    if len(comp) < h.n:
                        continue
                    sub, order = induced_subgraph(g, comp)
                    found = self._visit(sub, [colors[v] for v in order], tuple(branches[v] for v in order))
                    if found is not None:
                        return found
                self.failed.add(key)
                return None

        for u in range(g.n):
            for v in g.neighbors(u):
                if v < u or not self._may_contract(colors, u, v):
                    continue
                child = contract_edge(g, u, v)
                found = self._visit(child, _merge_colors(colors, u, v), _merge_branches(branches, u, v))
                if found is not None:
                    return found
            if colors[u] == 0:
                child, _ = delete_vertices(g, [u])
                found = self._visit(
                    child, colors[:u] + colors[u + 1:], branches[:u] + branches[u + 1:]
                )
                if found is not None:
                    return found
        self.failed.add(key)
        return None

    def _may_contract(self, colors, u, v) -> bool:
        if colors[u] and colors[v]:
            return False
        if not self.absorb and (colors[u] or colors[v]):
            return False
        return True


def _merge_colors(colors: List[int], u: int, v: int) -> List[int]:
    keep, gone = min(u, v), max(u, v)
    out = list(colors)
    out[keep] = colors[u] or colors[v]
    del out[gone]
    return out


def _merge_branches(branches, u: int, v: int):
    keep, gone = min(u, v), max(u, v)
    out = list(branches)
    out[keep] = branches[u] | branches[v]
    del out[gone]
    return tuple(out)


def find_cycle(g: Graph) -> Optional[List[int]]:
    """Some cycle of ``g`` as a vertex list, or ``None`` for forests."""
    parent: Dict[int, int] = {}
    depth: Dict[int, int] = {}
    for root in range(g.n):
        if root in parent:
            continue
        parent[root] = -1
        depth[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w == parent[u]:
                    continue
                if w in parent:
                    # back edge closes a cycle through the tree paths to the common ancestor
                    a, b = u, w
                    left, right = [a], [b]
                    while a != b:
                        if depth[a] >= depth[b]:
                            a = parent[a]
                            left.append(a)
                        else:
                            b = parent[b]
                            right.append(b)
                    return left[:-1] + right[::-1]
                parent[w] = u
                depth[w] = depth[u] + 1
                stack.append(w)
    return None


def find_minor_model(h: Graph, g: Graph, max_states: Optional[int] = None) -> Optional[ContractionWitness]:
    return is_minor(h, g, max_states)


def is_minor(h: Graph, g: Graph, max_states: Optional[int] = None) -> Optional[ContractionWitness]:
    """Return a model of ``h`` in ``g`` or ``None``; raises ResourceLimit when the budget runs out."""
    query = MinorQuery(pattern=h, host=g, budget=max_states)
    return _MinorSearch(query.pattern, query.host, max_states=query.budget).run()


def colored_minor(h: Graph, g: Graph, pattern_colors: Sequence[int], host_colors: Sequence[int],
                  absorb: bool = True, max_states: Optional[int] = None) -> Optional[ContractionWitness]:
    """Minor model where coloured pattern vertices land on the equally coloured host vertex.

    With ``absorb`` the coloured host vertex may swallow uncoloured
    neighbours (boundary vertices prevail); without it every coloured
    vertex stays a singleton branch set.
    """
    if h.n == 0:
        raise InvalidArgument("minor pattern must be nonempty")
    return _MinorSearch(h, g, pattern_colors, host_colors, absorb=absorb, max_states=max_states).run()


def family_model(F: Iterable[Graph], g: Graph, max_states: Optional[int] = None):
    """First member of ``F`` (by size) that is a minor of ``g``, with its model."""
    members = sorted(F, key=lambda h: (h.n, h.m))
    if not members:
        raise InvalidArgument("family must be nonempty")
    for h in members:
        witness = is_minor(h, g, max_states)
        if witness is not None:
            return h, witness
    return None


def family_minor(F: Iterable[Graph], g: Graph, max_states: Optional[int] = None) -> bool:
    return family_model(F, g, max_states) is not None


# ---------------------------------------------------------------------------
# topological minors


def topological_minor_model(h: Graph, g: Graph, max_steps: Optional[int] = None):
    """Branch-vertex map and subdivision paths of ``h`` in ``g``, or ``None``."""
    limit = config.budget("tm_steps", max_steps)
    if h.n > g.n or h.m > g.m:
        return None
    hd, gd = h.degrees(), g.degrees()
    order = sorted(range(h.n), key=lambda v: (-hd[v], v))
    h_edges = sorted(h.edges(), key=lambda e: (-(hd[e[0]] + hd[e[1]]), e))
    image = [-1] * h.n
    used: Set[int] = set()
    steps = [0]

    def tick():
        steps[0] += 1
        if steps[0] > limit:
            raise ResourceLimit(f"topological minor search exceeded {limit} steps", budget=limit)

    def route(i: int, blocked: Set[int], paths: List[List[int]]) -> Optional[List[List[int]]]:
        if i == len(h_edges):
            return list(paths)
        a, b = image[h_edges[i][0]], image[h_edges[i][1]]
        for path in _simple_paths(g, a, b, blocked, tick):
            inner = set(path[1:-1])
            paths.append(path)
            done = route(i + 1, blocked | inner, paths)
            if done is not None:
                return done
            paths.pop()
        return None

    def assign(i: int):
        if i == len(order):
            return route(0, set(image), [])
        p = order[i]
        for cand in range(g.n):
            if cand in used or gd[cand] < hd[p]:
                continue
            tick()
            image[p] = cand
            used.add(cand)
            done = assign(i + 1)
            if done is not None:
                return done
            used.discard(cand)
            image[p] = -1
        return None

    paths = assign(0)
    if paths is None:
        return None
    return list(image), dict(zip(h_edges, paths))


def _simple_paths(g: Graph, a: int, b: int, blocked: Set[int], tick):
    """Simple ``a``-``b`` paths whose inner vertices avoid ``blocked``, in depth-first order."""
    stack = [(a, [a])]
    while stack:
        u, path = stack.pop()
        tick()
        for w in reversed(g.neighbors(u)):
            if w == b:
                yield path + [b]
            elif w not in blocked and w not in path:
                stack.append((w, path + [w]))


def is_topological_minor(h: Graph, g: Graph, max_steps: Optional[int] = None) -> bool:
    return topological_minor_model(h, g, max_steps) is not None


# ---------------------------------------------------------------------------
# hitting sets


def _minimal_support(F: List[Graph], g: Graph, support: Iterable[int], max_states) -> List[int]:
    """Shrink ``support`` to an inclusion-minimal set still inducing some member of ``F``."""
    keep = sorted(support)
    for v in list(keep):
        trial = [u for u in keep if u != v]
        if family_minor(F, induced_subgraph(g, trial)[0], max_states):
            keep = trial
    return keep


def hitting_set(g: Graph, F: Iterable[Graph], k: int, method: str = "branch",
                max_states: Optional[int] = None) -> Optional[HittingSet]:
    """A set ``S`` with ``|S| <= k`` and no member of ``F`` a minor of ``g - S``, or ``None``.

    ``method="branch"`` branches on the vertices of an inclusion-minimal
    model; ``method="subsets"`` enumerates subsets and serves as a
    cross-check for graphs below 20 vertices.
    """
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    family = list(F)
    if not family:
        raise InvalidArgument("family must be nonempty")
    if method == "subsets":
        if g.n >= 20:
            raise InvalidArgument("subset enumeration is limited to graphs below 20 vertices")
        for size in range(min(k, g.n) + 1):
            for S in itertools.combinations(range(g.n), size):
                if not family_minor(family, delete_vertices(g, S)[0], max_states):
                    return HittingSet(frozenset(S))
        return None
    if method != "branch":
        raise InvalidArgument(f"unknown hitting-set method {method!r}")

    failed: Set = set()

    def branch(graph: Graph, ids: List[int], budget_left: int) -> Optional[Set[int]]:
        key = (canonical_key(graph), budget_left)
        if key in failed:
            return None
        found = family_model(family, graph, max_states)
        if found is None:
            return set()
        if budget_left == 0:
            failed.add(key)
            return None
        support = _minimal_support(family, graph, found[1].covered(), max_states)
        for v in support:
            child, index = delete_vertices(graph, [v])
            child_ids = [ids[old] for old in sorted(index, key=index.get)]
            result = branch(child, child_ids, budget_left - 1)
            if result is not None:
                return result | {ids[v]}
        failed.add(key)
        return None

    result = branch(g, list(range(g.n)), k)
    return None if result is None else HittingSet(frozenset(result))


def min_hitting_set(g: Graph, F: Iterable[Graph], max_states: Optional[int] = None) -> HittingSet:
    family = list(F)
    for k in range(g.n + 1):
        found = hitting_set(g, family, k, max_states=max_states)
        if found is not None:
            return found
    raise InvalidArgument("no hitting set exists; the family contains the null graph")


def is_in_Ak(g: Graph, F: Iterable[Graph], k: int, max_states: Optional[int] = None) -> bool:
    """Whether ``g`` is a k-apex of the class excluding every member of ``F``."""
    return hitting_set(g, F, k, max_states=max_states) is not None


def validate_hitting_set(g: Graph, F: Iterable[Graph], S: Iterable[int]) -> bool:
    return not family_minor(list(F), delete_vertices(g, list(S))[0])

