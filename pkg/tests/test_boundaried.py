# tests/test_boundaried.py

import itertools

import numpy as np
import pytest

from minorkit.core.boundaried import (
    ApexFlatnessPair,
    BoundariedGraph,
    augmented_flap,
    boundaried_graphs,
    boundaried_minor,
    characteristic,
    characteristic_pairs,
    compatible,
    equivalent_h,
    find_repeat,
    flap_coloring,
    flap_order,
    folio,
    glue,
    is_homogeneous,
    leq_h,
    minor_profile,
    monotone_repeat,
    palette,
    representative_tables,
    representatives,
    restrict_boundary,
)
from minorkit.core.flatness import trivial_certificate
from minorkit.core.graph import Graph, complete_graph, contract_edge, delete_edge, delete_vertex, path_graph
from minorkit.core.walls import build_elementary_wall
from minorkit.errors import InvalidArgument, NotFound, ResourceLimit

from oracles import topological_closure


@pytest.fixture
def p3_ends():
    return BoundariedGraph(path_graph(3), (0, 2))


@pytest.fixture
def rooted():
    return {
        "K1": BoundariedGraph(Graph(1), (0,)),
        "2K1": BoundariedGraph(Graph(2), (0,)),
        "K2": BoundariedGraph(path_graph(2), (0,)),
    }


@pytest.fixture(scope="module")
def tables():
    return representative_tables(1, 2, 2, 1)


def _apex_wall(height, attached):
    g0, w = build_elementary_wall(height)
    apex = g0.n
    g = Graph(g0.n + 1, g0.edges() + [(v, apex) for v in attached])
    return ApexFlatnessPair.build(g, [apex], w, trivial_certificate(g0, w)), g0


def test_boundaried_basics(p3_ends):
    assert p3_ends.t == 2
    assert p3_ends.rho == {0: 1, 2: 2}
    assert p3_ends.colors() == [1, 0, 2]
    assert p3_ends.interior() == [1]
    assert p3_ends.detail() == 2
    assert p3_ends.boundary_edges() == frozenset()
    assert BoundariedGraph(complete_graph(3), (2, 0)).boundary_edges() == frozenset({(1, 2)})


@pytest.mark.parametrize("boundary", [(0, 0), (3,), (-1,)])
def test_bad_boundary(boundary):
    with pytest.raises(InvalidArgument):
        BoundariedGraph(path_graph(3), boundary)


def test_delete_renumbers_labels(p3_ends):
    rest = p3_ends.delete([0])
    assert rest.g == path_graph(2)
    assert rest.boundary == (1,)


def test_isomorphism_keeps_labels(p3_ends):
    mirrored = BoundariedGraph(path_graph(3), (2, 0))
    assert mirrored.key() == p3_ends.key()
    assert mirrored.code() == p3_ends.code()
    assert BoundariedGraph(path_graph(3), (0, 1)).key() != p3_ends.key()
    assert BoundariedGraph.from_document(p3_ends.to_document()).key() == p3_ends.key()


def test_restrict_boundary(p3_ends):
    assert restrict_boundary(p3_ends, [2]).boundary == (2,)
    with pytest.raises(InvalidArgument):
        restrict_boundary(p3_ends, [1])


def test_glue_two_paths_gives_cycle(p3_ends):
    assert compatible(p3_ends, p3_ends)
    host = glue(p3_ends, p3_ends)
    assert (host.n, host.m) == (4, 4)
    assert host.degrees() == [2, 2, 2, 2]


def test_glue_rejects_incompatible(p3_ends):
    edge = BoundariedGraph(path_graph(2), (0, 1))
    assert not compatible(edge, p3_ends)
    with pytest.raises(InvalidArgument, match="compatible"):
        glue(edge, p3_ends)


def test_boundaried_minor(p3_ends):
    edge = BoundariedGraph(path_graph(2), (0, 1))
    empty = BoundariedGraph(Graph(2), (0, 1))
    assert boundaried_minor(edge, p3_ends)
    assert boundaried_minor(empty, p3_ends)
    assert not boundaried_minor(p3_ends, empty)
    with pytest.raises(InvalidArgument, match="boundary sizes"):
        boundaried_minor(BoundariedGraph(Graph(1), (0,)), p3_ends)


def test_folio_of_a_path(p3_ends):
    small = folio(p3_ends, 1)
    assert len(small) == 5
    assert BoundariedGraph(path_graph(2), (0, 1)) in small
    assert p3_ends not in small
    full = folio(p3_ends, 2)
    assert len(full) == 6
    assert p3_ends in full
    assert small.members <= full.members


def test_folio_limits(p3_ends):
    with pytest.raises(InvalidArgument):
        folio(p3_ends, -1)
    with pytest.raises(ResourceLimit):
        folio(p3_ends, 1, max_vertices=2)
    with pytest.raises(ResourceLimit):
        folio(p3_ends, 3, max_detail=2)


@pytest.mark.parametrize("t, n", [
    pytest.param(t, n, marks=pytest.mark.slow) if n == 5 else (t, n)
    for t in range(3) for n in range(max(t, 1), 6)
])
def test_folio_matches_the_topological_closure(t, n):
    for bg in boundaried_graphs(t, n):
        closure = topological_closure(bg.g, bg.boundary)
        for ell in range(4):
            expected = [BoundariedGraph(g, b) for g, b in closure if max(g.m, g.n - t) <= ell]
            got = folio(bg, ell)
            assert len(got) == len(expected), (bg, ell)
            assert all(member in got for member in expected), (bg, ell)


def test_profiles_separate_by_detail(rooted):
    k1, k2 = rooted["K1"], rooted["K2"]
    assert equivalent_h(k1, k2, 1, 1)
    assert leq_h(k1, k2, 2, 1)
    assert not leq_h(k2, k1, 2, 1)
    assert not equivalent_h(k1, k2, 2, 1)
    assert minor_profile(k2, 2, 1) == minor_profile(BoundariedGraph(path_graph(3), (0,)), 2, 1)


def test_profile_arguments(rooted, p3_ends):
    with pytest.raises(InvalidArgument, match="context bound"):
        minor_profile(p3_ends, 1, 1)
    with pytest.raises(ResourceLimit):
        minor_profile(rooted["K1"], 1, 9)
    two = BoundariedGraph(path_graph(2), (0, 1))
    assert not equivalent_h(two, BoundariedGraph(Graph(2), (0, 1)), 1, 2)
    with pytest.raises(InvalidArgument):
        leq_h(two, BoundariedGraph(Graph(2), (0, 1)), 1, 2)


@pytest.mark.parametrize("t,n,count", [(0, 3, 4), (1, 2, 2), (2, 2, 2), (1, 3, 6), (3, 2, 0)])
def test_boundaried_graph_counts(t, n, count):
    assert len(list(boundaried_graphs(t, n))) == count


def test_representatives(rooted):
    reps = representatives(1, 2, 2, 1)
    assert len(reps) == 3
    assert reps.members[0].g.n == 1
    assert reps.index_of(rooted["K2"]) == reps.index_of(BoundariedGraph(path_graph(3), (0,)))
    assert len({reps.index_of(bg) for bg in rooted.values()}) == 3
    back = type(reps).from_table(reps.to_table())
    assert [m.key() for m in back.members] == [m.key() for m in reps.members]


def test_representatives_miss(rooted):
    reps = representatives(1, 2, 1, 1)
    assert len(reps) == 1
    with pytest.raises(NotFound):
        reps.index_of(rooted["K2"])


def test_representatives_arguments():
    with pytest.raises(InvalidArgument):
        representatives(2, 1, 1, 2)
    with pytest.raises(InvalidArgument):
        representatives(2, 1, 2, 1)


def test_characteristic_shape(rooted, tables):
    char = characteristic(rooted["K2"], 1, 2, tables)
    pairs = characteristic_pairs(1, tables)
    assert len(char.vector()) == len(pairs)
    assert set(char.entries) == set(pairs)
    assert all(0 <= v <= 2 for v in char.entries.values())
    own = tables[1].index_of(rooted["K2"])
    assert char.entries[((), own)] == 0
    frame = char.to_frame(tables)
    assert list(frame.columns) == ["I", "representative", "value"]
    assert len(frame) == len(pairs)


def test_characteristic_arguments(rooted, tables):
    with pytest.raises(InvalidArgument):
        characteristic(rooted["K1"], -1, 2, tables)
    with pytest.raises(InvalidArgument, match="h=2"):
        characteristic(rooted["K1"], 1, 3, tables)


def test_find_repeat_on_a_chain(rooted, tables):
    chain = [rooted["K1"], rooted["K1"], rooted["K2"]]
    assert find_repeat(chain, 1, 2, tables) == 0
    with pytest.raises(InvalidArgument, match="boundary sizes"):
        find_repeat([rooted["K1"], BoundariedGraph(Graph(2), (0, 1))], 1, 2, tables)


@pytest.mark.parametrize("vectors,expected", [
    ([[0, 1], [1, 1], [1, 1]], 1),
    ([[0], [0]], 0),
    ([[0, 0], [0, 1], [2, 1], [2, 1]], 2),
])
def test_monotone_repeat(vectors, expected):
    assert monotone_repeat(vectors) == expected


def test_monotone_repeat_failures():
    with pytest.raises(InvalidArgument, match="monotone"):
        monotone_repeat([[1], [0]])
    with pytest.raises(InvalidArgument, match="length"):
        monotone_repeat([[1], [1, 1]])
    with pytest.raises(NotFound):
        monotone_repeat([[0], [1], [2]])


def _minor_steps(g, t):
    """One-step minors that keep the boundary ``0..t-1`` and its edges."""
    out = [delete_edge(g, a, b) for a, b in g.edges() if b >= t]
    out.extend(delete_vertex(g, v) for v in range(t, g.n))
    for a, b in g.edges():
        if b < t:
            continue
        if a < t and any(w < t and w != a and not g.has_edge(a, w) for w in g.neighbors(b)):
            continue
        out.append(contract_edge(g, a, b))
    return out


def _minor_chain(seed, t=3, length=5):
    """Boundaried graphs, each a boundaried minor of the next."""
    rng = np.random.default_rng(seed)
    n = t + int(rng.integers(1, 4))
    g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
    chain = [g]
    for _ in range(length - 1):
        steps = _minor_steps(chain[-1], t)
        chain.append(steps[int(rng.integers(len(steps)))] if steps else chain[-1])
    return [BoundariedGraph(h, tuple(range(t))) for h in reversed(chain)]


@pytest.fixture(scope="module")
def chain_tables():
    return representative_tables(3, 2, 3, 4)


@pytest.mark.slow
def test_characteristics_grow_along_minor_chains(chain_tables):
    for seed in range(200):
        chain = _minor_chain(seed)
        vectors = [characteristic(bg, 1, 2, chain_tables).vector() for bg in chain]
        for i in range(len(chain) - 1):
            assert compatible(chain[i], chain[i + 1]), seed
            assert boundaried_minor(chain[i], chain[i + 1]), seed
            assert np.all(vectors[i] <= vectors[i + 1]), (seed, i)


def test_minor_chain_keeps_boundary_edges():
    for seed in range(20):
        chain = _minor_chain(seed)
        assert len(chain) == 5
        assert len({bg.boundary_edges() for bg in chain}) == 1
        assert all(bg.t == 3 for bg in chain)


def test_deleting_a_boundary_edge_breaks_compatibility():
    full = BoundariedGraph(complete_graph(3), (0, 1, 2))
    cut = BoundariedGraph(delete_edge(complete_graph(3), 0, 1), (0, 1, 2))
    assert boundaried_minor(cut, full)
    assert not compatible(cut, full)


def test_apex_flatness_pair():
    pair, g0 = _apex_wall(3, range(16))
    assert pair.apices == (16,)
    assert pair.remainder() == g0
    assert pair.validate()


def test_flap_order_of_an_edge_cell():
    pair, g0 = _apex_wall(3, [])
    a, b = g0.edges()[0]
    assert flap_order(pair.cert, 0) == (a, b)
    assert flap_order(pair.cert, 0, {a: 2, b: 1}) == (b, a)
    with pytest.raises(InvalidArgument):
        flap_order(pair.cert, 0, {a: 1, b: 3})
    with pytest.raises(InvalidArgument, match="unknown cell"):
        flap_order(pair.cert, 10_000)


def test_augmented_flap_puts_apices_first():
    pair, g0 = _apex_wall(3, range(16))
    bg = augmented_flap(pair, 0, (16,))
    assert (bg.t, bg.g.n, bg.g.m) == (3, 3, 3)
    plain = augmented_flap(pair, 0, ())
    assert (plain.t, plain.g.m) == (2, 1)
    with pytest.raises(InvalidArgument):
        augmented_flap(pair, 0, (0,))


def test_palette_of_a_plain_wall():
    pair, _ = _apex_wall(3, range(16))
    assert len(palette(pair, None, (), 1)) == 1
    assert len(palette(pair, None, (16,), 1)) == 1


def test_fully_attached_apex_is_homogeneous():
    g0, _ = build_elementary_wall(5)
    pair, _ = _apex_wall(5, range(g0.n))
    assert is_homogeneous(pair, [(), (g0.n,)], 1)


def test_flap_coloring_marks_the_attachment():
    g0, _ = build_elementary_wall(3)
    v = 5
    pair, _ = _apex_wall(3, [v])
    colors = flap_coloring(pair, 1, 1)
    assert set(colors) == set(range(g0.m))
    assert sorted(set(colors.values())) == list(range(1, len(set(colors.values())) + 1))
    touching = {c for c, (a, b) in enumerate(g0.edges()) if v in (a, b)}
    rest = {colors[c] for c in colors if c not in touching}
    assert len(rest) == 1
    assert all(colors[c] not in rest for c in touching)
    lonely, _ = _apex_wall(3, [])
    assert set(flap_coloring(lonely, 1, 1).values()) == {1}
