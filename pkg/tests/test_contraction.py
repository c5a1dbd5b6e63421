# tests/test_contraction.py

import numpy as np
import pytest

from minorkit.core.bounds import BoundParams, evaluate
from minorkit.core.contraction import (
    absorb,
    apex_fixture,
    apex_grid_contract,
    central_square,
    complete_apex_grid,
    compose,
    forcing_check,
    forcing_fixture,
    lattice_paths,
    minimal_apex_height,
    panchromatic_contract,
    random_apex_grid,
    scattered_fixture,
    select_scattered,
    verify_witness,
    witness_from_document,
    witness_to_document,
)
from minorkit.core.graph import ContractionWitness, Graph, complete_graph, cycle_graph, path_graph
from minorkit.core.grids import (build_grid, central_offset, grid_from_graph, is_scattered, middle_horizontal_path,
                                 random_triangulated_grid)
from minorkit.errors import InvalidArgument, ResourceLimit


def _meets_every_colour(witness, collection):
    return all(bs & colour for bs in witness.branch_sets for colour in collection)


def test_absorb_splits_ties_towards_lower_index():
    sets = absorb(path_graph(5), [{0}, {4}])
    assert sets == [frozenset({0, 1, 2}), frozenset({3, 4})]


def test_absorb_respects_allowed():
    sets = absorb(path_graph(5), [{0}], allowed={0, 1, 3})
    assert sets == [frozenset({0, 1})]


def test_compose_chains_models():
    c6 = cycle_graph(6)
    first = ContractionWitness(complete_graph(3), (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})))
    second = ContractionWitness(complete_graph(2), (frozenset({0}), frozenset({1, 2})))
    assert verify_witness(c6, first)
    both = compose(first, second)
    assert both.branch_sets == (frozenset({0, 1}), frozenset({2, 3, 4, 5}))
    assert "composed" in both.meta
    assert verify_witness(c6, both)


def test_verify_witness_rejects_bad_models():
    c4 = cycle_graph(4)
    disconnected = ContractionWitness(Graph(1), (frozenset({0, 2}),))
    assert not verify_witness(c4, disconnected)
    partial = ContractionWitness(Graph(1), (frozenset({0, 1}),))
    assert verify_witness(c4, partial)
    assert not verify_witness(c4, partial, spanning=True)


def test_witness_document_round_trip():
    witness = ContractionWitness(complete_graph(2), (frozenset({0, 1}), frozenset({2})))
    doc = witness_to_document(witness, fixed=[2])
    back, fixed = witness_from_document(doc)
    assert back == witness
    assert fixed == [2]


@pytest.mark.parametrize("layout", ["blocks", "interleaved", "random"])
def test_panchromatic_single_vertex_target(layout):
    grid, collection = scattered_fixture(1, 3, 2, layout=layout, seed=5)
    witness = panchromatic_contract(grid, collection, 1, 2)
    assert witness.target.n == 1
    assert _meets_every_colour(witness, collection)
    assert verify_witness(grid.graph, witness)


@pytest.mark.slow
@pytest.mark.parametrize("layout", ["blocks", "interleaved", "random"])
def test_panchromatic_two_grid(layout):
    grid, collection = scattered_fixture(2, 2, 8, layout=layout, seed=1)
    witness = panchromatic_contract(grid, collection, 2, 8)
    assert grid_from_graph(witness.target, 2, 2) is not None
    assert _meets_every_colour(witness, collection)
    assert verify_witness(grid.graph, witness)


def test_panchromatic_rejects_small_distance():
    grid, collection = scattered_fixture(2, 1, 8)
    with pytest.raises(InvalidArgument, match="2r\\^2"):
        panchromatic_contract(grid, collection, 2, 7)


def test_panchromatic_rejects_crowded_collection():
    grid, _ = scattered_fixture(1, 2, 2)
    crowded = [frozenset({grid.at(1, 0)}), frozenset({grid.at(2, 0)})]
    with pytest.raises(InvalidArgument, match="scattered"):
        panchromatic_contract(grid, crowded, 1, 2)


def test_panchromatic_rejects_short_grid():
    grid = build_grid(20, 5)
    with pytest.raises(InvalidArgument, match="rows"):
        panchromatic_contract(grid, [frozenset({grid.at(1, 0)})], 1, 2)


@pytest.mark.slow
@pytest.mark.parametrize("a", [1, 2, 3])
@pytest.mark.parametrize("r", [2, 3])
def test_panchromatic_at_minimal_size_over_seeds(r, a):
    d = 2 * r * r
    for seed in range(100):
        layout = ("blocks", "interleaved", "random")[seed % 3]
        grid, collection = scattered_fixture(r, a, d, layout=layout, seed=seed, chords=0.2)
        witness = panchromatic_contract(grid, collection, r, d)
        assert grid_from_graph(witness.target, r, r) is not None, seed
        assert _meets_every_colour(witness, collection), seed
        assert verify_witness(grid.graph, witness), seed


def test_scattered_fixture_rejects_unknown_layout():
    with pytest.raises(InvalidArgument, match="layout"):
        scattered_fixture(1, 2, 2, layout="spiral")


def test_central_square():
    assert central_square(5, 3) == [6, 7, 8, 11, 12, 13, 16, 17, 18]
    assert central_square(4, 4) == list(range(16))


def test_minimal_apex_height():
    assert minimal_apex_height(1, 1) == 30


def test_apex_fixture_shape():
    ag = apex_fixture(1, 1)
    assert ag.grid.k == ag.grid.r == 30
    assert ag.apices == [900]
    assert len(ag.neighbors[0]) == 16 * 16
    assert not ag.is_complete()


def test_complete_and_random_apex_grids():
    ag = complete_apex_grid(build_grid(3, 3), 2)
    assert ag.is_complete()
    assert ag.graph.n == 11
    assert ag.graph.degree(9) == 9
    sparse = random_apex_grid(4, 2, 0.5, seed=3)
    assert len(sparse.neighbors) == 2
    assert all(nbrs <= set(range(16)) for nbrs in sparse.neighbors)
    assert random_apex_grid(4, 2, 0.5, seed=3).neighbors == sparse.neighbors


def test_apex_grid_contract_keeps_apex_fixed():
    ag = apex_fixture(1, 1)
    witness = apex_grid_contract(ag, 1)
    assert witness.target.n == 2
    assert witness.target.has_edge(0, 1)
    assert witness.branch_sets[-1] == frozenset(ag.apices)
    assert verify_witness(ag.graph, witness, fixed=ag.apices)


@pytest.mark.slow
def test_apex_grid_contract_two_grid():
    ag = apex_fixture(2, 1)
    witness = apex_grid_contract(ag, 2)
    assert witness.target.n == 5
    assert all(witness.target.has_edge(t, 4) for t in range(4))
    assert verify_witness(ag.graph, witness, fixed=ag.apices)


def test_apex_grid_contract_needs_an_apex():
    ag = complete_apex_grid(build_grid(30, 30), 0)
    with pytest.raises(InvalidArgument):
        apex_grid_contract(ag, 1)


def _bound(name, **params):
    return evaluate(name, BoundParams(**params))


def _period_squares(h, r, a, squares):
    """Vertices of whole class periods of the central grid, indexed by (column period, row period)."""
    b = _bound("apex_grid_b", r=r, a=a)
    o = central_offset(h, _bound("apex_grid_height", r=r, a=a))
    return frozenset((o + k * b + y) * h + (o + p * b + x) for p, k in squares for x in range(b) for y in range(b))


def _random_central_sets(r, a, seed, density):
    h = minimal_apex_height(r, a)
    grid = random_triangulated_grid(h, h, seed=seed, density=0.3)
    square = central_square(h, _bound("apex_grid_height", r=r, a=a))
    rng = np.random.default_rng(seed)
    return grid, [frozenset(v for v, keep in zip(square, rng.random(len(square)) < density) if keep)
                  for _ in range(a)]


def _check_selection(grid, sets, r, selection):
    n_sq, ell = r * r, _bound("scattered_m", r=r)
    collection = selection.collection
    assert 1 <= len(collection) <= len(sets)
    assert is_scattered(collection, middle_horizontal_path(selection.grid), n_sq, len(collection), ell)
    assert verify_witness(grid.graph, selection.witness)
    # the sets every member of a class meets; together they must name every input set
    common = [frozenset.intersection(*(frozenset(i for i, s in enumerate(sets)
                                                 if selection.witness.branch_sets[u] & s) for u in part))
              for part in collection]
    assert frozenset().union(*common) == frozenset(range(len(sets)))
    assert all(common[c] <= selection.traces[u] for c, part in enumerate(collection) for u in part)


@pytest.mark.parametrize("size", [2, 3, 4, 6])
def test_lattice_paths_visit_every_node_once(size):
    paths = lattice_paths(size)
    assert len(paths) == len(set(paths))
    nodes = {(p, k) for p in range(size) for k in range(size)}
    for path in paths:
        assert set(path) == nodes and len(path) == len(nodes)
        assert all(abs(p - q) + abs(k - m) == 1 for (p, k), (q, m) in zip(path, path[1:]))
    if size > 2:
        assert len(paths) >= 8


@pytest.mark.slow
@pytest.mark.parametrize("a, density", [(1, 1.0), (2, 0.3), (3, 0.25)])
def test_select_scattered_over_seeds(a, density):
    f11 = _bound("apex_grid_neighbors", r=1, a=a)
    for seed in range(50):
        grid, sets = _random_central_sets(1, a, seed, density)
        assert all(len(s) >= f11 for s in sets), seed
        _check_selection(grid, sets, 1, select_scattered(grid, sets, 1))


@pytest.mark.parametrize("r, a, first, second", [
    (1, 2, [(0, 0), (0, 1), (2, 0), (2, 1)], [(0, 2), (1, 2), (2, 2)]),
    pytest.param(2, 2, [(p, k) for p in (0, 4) for k in range(4)], [(p, k) for p in (0, 2) for k in range(4)],
                 marks=pytest.mark.slow),
])
def test_select_scattered_with_sets_on_the_lattice_rim(r, a, first, second):
    # whole periods on the outer columns put heavy blocks where a row snake bends
    h = minimal_apex_height(r, a)
    grid = build_grid(h, h)
    sets = [_period_squares(h, r, a, first), _period_squares(h, r, a, second)]
    f11 = _bound("apex_grid_neighbors", r=r, a=a)
    assert min(len(s) for s in sets) >= f11
    if r == 2:
        assert len(sets[0]) == len(sets[1]) == f11
    _check_selection(grid, sets, r, select_scattered(grid, sets, r))


def test_select_scattered_rejects_undersized_sets():
    h = minimal_apex_height(1, 2)
    grid = build_grid(h, h)
    square = central_square(h, _bound("apex_grid_height", r=1, a=2))
    f11 = _bound("apex_grid_neighbors", r=1, a=2)
    with pytest.raises(InvalidArgument, match="needs"):
        select_scattered(grid, [frozenset(square), frozenset(square[:f11 - 1])], 1)
    outside = frozenset(range(h)) | frozenset(square[:f11 - 1])
    with pytest.raises(InvalidArgument, match="central"):
        select_scattered(grid, [frozenset(square), outside], 1)
    with pytest.raises(InvalidArgument, match="below"):
        select_scattered(build_grid(h - 1, h - 1), [frozenset(square), frozenset(square)], 1)
    with pytest.raises(InvalidArgument):
        select_scattered(grid, [], 1)


@pytest.mark.parametrize("density", [1.0, 0.4])
def test_apex_grid_contract_two_apices(density):
    ag = apex_fixture(1, 2, seed=3, density=density)
    witness = apex_grid_contract(ag, 1)
    assert witness.target.n == 3
    assert witness.target.has_edge(0, 1) and witness.target.has_edge(0, 2)
    assert all(witness.branch_sets[t] == frozenset({v}) for t, v in zip((1, 2), ag.apices))
    assert verify_witness(ag.graph, witness, fixed=ag.apices)


def test_forcing_check_on_small_apex_grid(kuratowski):
    g, apices = forcing_fixture(3, 1)
    assert forcing_check(g, apices, kuratowski, 0)
    # dropping the grid centre leaves a wheel
    assert not forcing_check(g, apices, kuratowski, 1)


def test_forcing_check_budget_and_arguments(kuratowski):
    g, apices = forcing_fixture(3, 1)
    with pytest.raises(ResourceLimit):
        forcing_check(g, apices, kuratowski, 1, max_subsets=1)
    with pytest.raises(InvalidArgument):
        forcing_check(g, [], kuratowski, 1)
    with pytest.raises(InvalidArgument):
        forcing_check(g, apices, kuratowski, -1)
