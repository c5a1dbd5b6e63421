# src/minorkit/core/obstructions.py

"""Obstruction sets of k-apex classes, enumerated up to a vertex budget."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from .. import config
from ..errors import InvalidArgument, ResourceLimit
from .canonical import CanonicalCode, canonical_code, canonical_key, canonical_labeling
from .graph import Graph, contract_edge, delete_edge, delete_vertex
from .minors import hitting_set, is_in_Ak, min_hitting_set

logger = logging.getLogger(__name__)


def enumerate_graphs(n: int, max_vertices: Optional[int] = None) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices, by canonical vertex augmentation.

    A child built by adding a vertex to a parent is emitted only when
    removing its canonically last vertex gives back the parent's class.
    """
    limit = config.budget("enum_max_vertices", max_vertices)
    if n < 0:
        raise InvalidArgument(f"vertex count must be nonnegative, got {n}")
    if n > limit:
        raise ResourceLimit(f"graph enumeration limited to {limit} vertices", budget=limit)
    yield from _augment(Graph(0), n)


def _augment(parent: Graph, n: int) -> Iterator[Graph]:
    if parent.n == n:
        yield parent
        return
    parent_key = canonical_key(parent)
    p = parent.n
    seen = set()
    for subset in range(1 << p):
        edges = parent.edges() + [(v, p) for v in range(p) if subset >> v & 1]
        child = Graph(p + 1, edges)
        lab = canonical_labeling(child)
        if lab.key in seen:
            continue
        if canonical_key(delete_vertex(child, lab.order[-1])) != parent_key:
            continue
        seen.add(lab.key)
        yield from _augment(child, n)


def one_step_minors(g: Graph) -> Iterator[Graph]:
    """Every graph obtained by one vertex deletion, edge deletion or edge contraction."""
    for v in range(g.n):
        yield delete_vertex(g, v)
    for u, v in g.edges():
        yield delete_edge(g, u, v)
        yield contract_edge(g, u, v)


def is_obstruction(g: Graph, F: Sequence[Graph], k: int, max_states: Optional[int] = None) -> bool:
    if is_in_Ak(g, F, k, max_states):
        return False
    return all(is_in_Ak(h, F, k, max_states) for h in one_step_minors(g))


def verify_hitting_size(g: Graph, F: Sequence[Graph], k: int) -> bool:
    """True iff the smallest F-hitting set of ``g`` has exactly ``k + 1`` vertices."""
    return len(min_hitting_set(g, F)) == k + 1


@dataclass
class ObstructionRun:
    F: List[Graph]
    k: int
    n_max: int
    found: Dict[CanonicalCode, Graph] = field(default_factory=dict)
    stats: Dict[int, Dict[str, int]] = field(default_factory=dict)
    complete_up_to: int = -1
    resource_limited: List[Graph] = field(default_factory=list)
    wall_clock: float = 0.0
    workers: int = 1

    @property
    def partial(self) -> bool:
        return bool(self.resource_limited) or self.complete_up_to < self.n_max

    def obstructions(self) -> List[Graph]:
        return [self.found[c] for c in sorted(self.found)]

    def stats_frame(self) -> pd.DataFrame:
        rows = [{"n": n, **row} for n, row in sorted(self.stats.items())]
        return pd.DataFrame(rows, columns=["n", "candidates", "solved", "pruned", "obstructions", "limited"])


def _membership(args) -> Tuple[bool, bool]:
    """(member, limited) for one candidate; module level so worker processes can pickle it."""
    g, F, k, max_states = args
    try:
        return hitting_set(g, F, k, max_states=max_states) is not None, False
    except ResourceLimit:
        return False, True


class _MembershipCache:
    def __init__(self, F: List[Graph], k: int, max_states: Optional[int]):
        self.F, self.k, self.max_states = F, k, max_states
        self.known: Dict[Tuple, bool] = {}

    def get(self, g: Graph) -> bool:
        key = canonical_key(g)
        if key not in self.known:
            self.known[key] = is_in_Ak(g, self.F, self.k, self.max_states)
        return self.known[key]

    def put(self, g: Graph, member: bool) -> None:
        self.known[canonical_key(g)] = member


def enumerate_obstructions(F: Sequence[Graph], k: int, n_max: int, workers: Optional[int] = None,
                           max_states: Optional[int] = None,
                           max_vertices: Optional[int] = None) -> ObstructionRun:
    """All obstructions of the k-apex class of excl(F) with at most ``n_max`` vertices.

    A candidate with a non-member one-step minor is itself a non-member and
    not minimal, so its own membership is never solved. The remaining
    candidates of each vertex count are solved, in parallel when
    ``workers > 1``, and the results are merged in enumeration order.
    """
    family = list(F)
    if not family:
        raise InvalidArgument("family must be nonempty")
    if k < 0 or n_max < 0:
        raise InvalidArgument("k and n_max must be nonnegative")
    workers = config.budget("workers", workers)
    start = time.monotonic()
    run = ObstructionRun(F=family, k=k, n_max=n_max, workers=workers)
    cache = _MembershipCache(family, k, max_states)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n in range(n_max + 1):
            try:
                candidates = list(enumerate_graphs(n, max_vertices))
            except ResourceLimit:
                logger.warning("graph enumeration budget reached at n=%d; run is partial", n)
                break
            row = {"candidates": len(candidates), "solved": 0, "pruned": 0, "obstructions": 0, "limited": 0}
            pending = []
            for g in candidates:
                try:
                    blocked = any(not cache.get(h) for h in one_step_minors(g))
                except ResourceLimit:
                    run.resource_limited.append(g)
                    row["limited"] += 1
                    continue
                if blocked:
                    cache.put(g, False)
                    row["pruned"] += 1
                else:
                    pending.append(g)
            jobs = [(g, family, k, max_states) for g in pending]
            results = pool.map(_membership, jobs) if pool else map(_membership, jobs)
            for g, (member, limited) in zip(pending, results):
                row["solved"] += 1
                if limited:
                    run.resource_limited.append(g)
                    row["limited"] += 1
                    continue
                cache.put(g, member)
                if not member:
                    run.found[canonical_code(g)] = g
                    row["obstructions"] += 1
            run.stats[n] = row
            if row["limited"] == 0 and run.complete_up_to == n - 1:
                run.complete_up_to = n
            logger.info("n=%d: %d candidates, %d pruned, %d obstructions", n, row["candidates"],
                        row["pruned"], row["obstructions"])
    finally:
        if pool:
            pool.shutdown()
    run.wall_clock = time.monotonic() - start
    if run.partial:
        logger.warning("obstruction run complete only up to n=%d", run.complete_up_to)
    return run

