# src/minorkit/core/planarity.py

import itertools
import logging
from typing import Dict, List, Optional

import networkx as nx

from .. import config
from ..errors import ResourceLimit
from .graph import Graph, components, delete_vertices

logger = logging.getLogger(__name__)

Rotation = Dict[int, List[int]]


def planar_embedding(g: Graph) -> Optional[Rotation]:
    """Rotation system (clockwise neighbour order per vertex) or ``None`` when non-planar."""
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return None
    planar, embedding = nx.check_planarity(g.to_networkx())
    if not planar:
        return None
    return {v: list(embedding.neighbors_cw_order(v)) for v in range(g.n)}


def is_planar(g: Graph) -> bool:
    return planar_embedding(g) is not None


def count_faces(rotation: Rotation) -> int:
    """Number of face orbits of the dart permutation; isolated vertices count one face each."""
    position = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rotation.items()}
    seen = set()
    faces = 0
    for u, nbrs in rotation.items():
        if not nbrs:
            faces += 1
            continue
        for v in nbrs:
            if (u, v) in seen:
                continue
            faces += 1
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                ring = rotation[b]
                nxt = ring[(position[b][a] + 1) % len(ring)]
                a, b = b, nxt
    return faces


def check_rotation_system(g: Graph, rotation: Rotation) -> bool:
    """True iff ``rotation`` lists exactly the neighbours of each vertex and satisfies Euler's formula."""
    if set(rotation) != set(range(g.n)):
        return False
    for v in range(g.n):
        if sorted(rotation[v]) != list(g.neighbors(v)):
            return False
    comps = components(g)
    # V - E + F = 2 per component; an isolated vertex has one face
    return g.n - g.m + count_faces(rotation) == 2 * len(comps)


def apex_number(g: Graph, max_vertices: Optional[int] = None) -> int:
    """Smallest ``|A|`` with ``g - A`` planar, by subset search of increasing size."""
    limit = config.budget("apex_max_vertices", max_vertices)
    if g.n > limit:
        raise ResourceLimit(f"apex_number limited to {limit} vertices, graph has {g.n}", budget=limit)
    for size in range(g.n + 1):
        for apices in itertools.combinations(range(g.n), size):
            if is_planar(delete_vertices(g, apices)[0]):
                logger.debug("apex set %s found for %r", apices, g)
                return size
    return g.n
