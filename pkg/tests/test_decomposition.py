# tests/test_decomposition.py

import networkx as nx
import numpy as np
import pytest

from minorkit.core.boundaried import BoundariedGraph
from minorkit.core.decomposition import (
    TreeDecomposition,
    boundaried_decomposition,
    check_binary,
    check_linked,
    check_proper,
    check_size,
    check_subword,
    decomposition_from_order,
    disjoint_paths,
    elimination_order,
    linked_decomposition,
    lower_graph,
    make_binary_rooted,
    menger_number,
    optimal_decomposition,
    pigeonhole_subword,
    prune,
    treewidth_exact,
    upper_graph,
    validate,
)
from minorkit.core.graph import Graph, complete_bipartite, complete_graph, cycle_graph, grid_graph, path_graph
from minorkit.errors import InvalidArgument, ResourceLimit

from oracles import brute_force_treewidth, menger_oracle


def _td(bags, edges, root=None):
    return TreeDecomposition({k: set(v) for k, v in bags.items()}, edges, root)


@pytest.fixture
def p4_chain():
    """Elimination decomposition of P4 in vertex order, rooted at the bag of vertex 3."""
    return path_graph(4), decomposition_from_order(path_graph(4), [0, 1, 2, 3])


def test_validate_accepts_a_path_decomposition():
    td = _td({0: {0, 1}, 1: {1, 2}}, [(0, 1)])
    assert validate(td, path_graph(3))
    assert td.width() == 1


@pytest.mark.parametrize("bags,edges,failed", [
    ({0: {0, 1}, 1: {1, 2}}, [(0, 5)], "tree"),
    ({0: {0, 1}, 1: {1, 2}, 2: {2}}, [(0, 1), (1, 2), (0, 2)], "tree"),
    ({0: {0, 1}, 1: {1, 2, 5}}, [(0, 1)], "vertices"),
    ({0: {0, 1}}, [], "cover"),
    ({0: {0, 1}, 1: {2}}, [(0, 1)], "edges"),
    ({0: {0, 1}, 1: {1, 2}, 2: {0}}, [(0, 1), (1, 2)], "connected"),
])
def test_validate_names_the_failure(bags, edges, failed):
    verdict = validate(_td(bags, edges), path_graph(3))
    assert not verdict
    assert verdict.failed == failed


def test_validate_root_against_boundary():
    td = _td({0: {0, 1}, 1: {1, 2}}, [(0, 1)], root=0)
    assert validate(td, path_graph(3), boundary=[0, 1])
    assert validate(td, path_graph(3), boundary=[1, 2]).failed == "root"
    assert validate(_td({0: {0, 1}, 1: {1, 2}}, [(0, 1)]), path_graph(3), boundary=[0, 1]).failed == "root"


@pytest.mark.parametrize("g,expected", [
    (path_graph(5), 1),
    (cycle_graph(6), 2),
    (complete_graph(5), 4),
    (complete_bipartite(3, 3), 3),
    (grid_graph(3, 3), 3),
    (Graph(3), 0),
    (Graph(0), -1),
])
def test_treewidth_known_values(g, expected):
    assert treewidth_exact(g) == expected


@pytest.mark.parametrize("seed", range(8))
def test_treewidth_agrees_with_oracle(seed):
    G = nx.gnm_random_graph(7, 10, seed=seed)
    g = Graph(7, G.edges())
    tw, order = elimination_order(g)
    assert tw == brute_force_treewidth(g)
    td = decomposition_from_order(g, order)
    assert validate(td, g)
    assert td.width() == tw


def _random_tree(n, seed):
    rng = np.random.default_rng(seed)
    T = nx.from_prufer_sequence([int(v) for v in rng.integers(n, size=n - 2)]) if n > 2 else nx.path_graph(n)
    return Graph(n, T.edges())


@pytest.mark.parametrize("n", range(1, 11))
def test_treewidth_closed_forms(n):
    assert treewidth_exact(complete_graph(n)) == n - 1
    if n >= 2:
        for seed in range(3):
            assert treewidth_exact(_random_tree(n, seed)) == 1
        assert treewidth_exact(path_graph(n)) == 1
    if n >= 3:
        assert treewidth_exact(cycle_graph(n)) == 2


@pytest.mark.slow
def test_four_by_four_grid_against_oracle():
    g = grid_graph(4, 4)
    assert treewidth_exact(g, max_vertices=16) == 4
    assert brute_force_treewidth(g) == 4
    assert validate(optimal_decomposition(g, max_vertices=16), g)


def test_treewidth_budget():
    with pytest.raises(ResourceLimit):
        treewidth_exact(complete_graph(5), max_vertices=4)


def test_decomposition_of_a_disconnected_graph():
    g = Graph(6, [(0, 1), (1, 2), (3, 4)])
    td = optimal_decomposition(g)
    assert validate(td, g)
    assert nx.is_tree(td.tree())
    assert td.width() == 1


def test_decomposition_from_order_rejects_bad_order():
    with pytest.raises(InvalidArgument):
        decomposition_from_order(path_graph(3), [0, 1, 1])


def test_td_text_round_trip(p4_chain):
    g, td = p4_chain
    n, back = TreeDecomposition.from_td(td.to_td(g.n))
    assert n == 4
    assert sorted(back.bags.values(), key=sorted) == sorted(td.bags.values(), key=sorted)
    assert validate(back, g)


def test_prune_drops_contained_bags(p4_chain):
    g, td = p4_chain
    pruned = prune(td)
    assert len(pruned.bags) == 3
    assert pruned.root in pruned.bags
    assert pruned.bags[pruned.root] == frozenset({2, 3})
    assert validate(pruned, g)
    kept = prune(td, keep=[3])
    assert 3 in kept.bags


def test_make_binary_rooted_splits_a_star():
    g = complete_bipartite(1, 4)
    td = _td({0: {0}, 1: {0, 1}, 2: {0, 2}, 3: {0, 3}, 4: {0, 4}}, [(0, i) for i in range(1, 5)])
    binary = make_binary_rooted(td, 0)
    assert len(binary.bags) == 7
    assert binary.root == 0
    assert check_binary(binary)
    assert validate(binary, g)
    assert not check_binary(td.rooted(0))
    assert check_binary(td.rooted(0)).failed == "binary"


def test_boundaried_decomposition_puts_boundary_at_root():
    bg = BoundariedGraph(cycle_graph(4), (0, 2))
    td = boundaried_decomposition(bg)
    assert td.bags[td.root] == frozenset({0, 2})
    assert validate(td, bg.g, boundary=[0, 2])
    assert td.width() == 2


def test_lower_and_upper_graphs(p4_chain):
    g, td = p4_chain
    assert td.below(1) == frozenset({0, 1, 2})
    low = lower_graph(td, g, 1)
    assert low.g == path_graph(3)
    assert low.boundary == (1, 2)
    up = upper_graph(td, g, 1, order=[2, 1])
    assert up.g == path_graph(3)
    assert up.boundary == (1, 0)
    with pytest.raises(InvalidArgument):
        lower_graph(td, g, 1, order=[0, 1])


def test_menger_number_on_a_grid():
    g = grid_graph(3, 3)
    assert menger_number(g, [0, 3, 6], [2, 5, 8]) == 3
    assert menger_number(g, [0], [8]) == 1
    assert menger_number(g, [0, 1], [1, 2]) == 2


@pytest.mark.parametrize("seed", range(8))
def test_menger_number_agrees_with_oracle(seed):
    G = nx.gnm_random_graph(8, 11, seed=seed)
    g = Graph(8, G.edges())
    rng = np.random.default_rng(seed)
    X = [int(v) for v in rng.choice(8, size=3, replace=False)]
    Y = [int(v) for v in rng.choice(8, size=3, replace=False)]
    assert menger_number(g, X, Y) == menger_oracle(g, X, Y)


def test_disjoint_paths_across_a_grid():
    g = grid_graph(3, 3)
    X, Y = {0, 3, 6}, {2, 5, 8}
    paths = disjoint_paths(g, X, Y, 3)
    assert len(paths) == 3
    used = [v for p in paths for v in p]
    assert len(used) == len(set(used))
    for p in paths:
        assert p[0] in X and p[-1] in Y
        assert not set(p[1:-1]) & (X | Y)
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
    assert disjoint_paths(g, X, Y, 4) is None
    assert disjoint_paths(g, X, Y, 0) == []
    assert disjoint_paths(path_graph(4), [0, 3], [1, 2], 2) is not None
    with pytest.raises(InvalidArgument):
        disjoint_paths(g, [9], Y, 1)
    with pytest.raises(InvalidArgument):
        disjoint_paths(g, X, Y, -1)


def test_disjoint_paths_agree_with_menger_over_seeds():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 10))
        G = nx.gnm_random_graph(n, int(rng.integers(n - 1, 2 * n)), seed=seed)
        g = Graph(n, G.edges())
        X = [int(v) for v in rng.choice(n, size=int(rng.integers(1, 4)), replace=False)]
        Y = [int(v) for v in rng.choice(n, size=int(rng.integers(1, 4)), replace=False)]
        s = int(rng.integers(0, 4))
        paths = disjoint_paths(g, X, Y, s)
        assert (paths is not None) == (s <= menger_oracle(g, X, Y)), seed
        if paths is None:
            continue
        assert len(paths) == s
        used = [v for p in paths for v in p]
        assert len(used) == len(set(used)), seed
        for p in paths:
            assert p[0] in X and p[-1] in Y
            assert not set(p[1:-1]) & (set(X) | set(Y))
            assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def test_check_linked_finds_the_narrow_pair(p4_chain):
    g, td = p4_chain
    verdict = check_linked(td, g)
    assert not verdict
    assert verdict.pair == (2, 1)
    assert verdict.s == 2
    assert check_linked(td, g, s_max=1)
    with pytest.raises(InvalidArgument):
        check_linked(TreeDecomposition(td.bags, td.edges), g)


def test_single_bag_is_linked():
    g = complete_graph(4)
    td = optimal_decomposition(g)
    assert check_linked(td, g)


def test_linked_decomposition_of_a_path():
    g = path_graph(4)
    td, verdict = linked_decomposition(g)
    assert verdict
    assert validate(td, g)
    assert check_binary(td)
    assert td.width() == 1


def test_check_proper_and_size():
    twin = _td({0: {0, 1}, 1: {0, 1}}, [(0, 1)], root=0)
    assert check_proper(twin).failed == "proper"
    assert check_proper(decomposition_from_order(path_graph(4), [0, 1, 2, 3]))
    assert check_size(_td({0: {0, 1}, 1: {1, 2}, 2: {2, 3}}, [(0, 1), (1, 2)]), path_graph(4))
    assert check_size(_td({0: {0, 1}}, []), path_graph(4)).failed == "size"


@pytest.mark.parametrize("word,m,expected", [
    ([2, 1, 2, 2], 2, (2, (2, 4))),
    ([1, 1, 2, 2], 2, (1, (0, 4))),
    ([3, 3, 3, 3, 3, 3, 3, 3], 2, (3, (0, 8))),
])
def test_pigeonhole_subword(word, m, expected):
    assert pigeonhole_subword(word, m, r=3 if max(word) == 3 else None) == expected


@pytest.mark.parametrize("seed", range(10))
def test_pigeonhole_subword_on_random_words(seed):
    rng = np.random.default_rng(seed)
    m, r = 3, 3
    word = [int(x) for x in rng.integers(1, r + 1, size=m ** r)]
    k, span = pigeonhole_subword(word, m, r)
    assert 1 <= k <= r
    assert check_subword(word, k, span, m)


@pytest.mark.parametrize("word,m,r", [
    ([1, 2, 1], 2, 2),
    ([0, 1, 1, 1], 2, 2),
    ([1, 1, 1, 1], 0, 1),
    ([], 1, None),
])
def test_pigeonhole_subword_rejects(word, m, r):
    with pytest.raises(InvalidArgument):
        pigeonhole_subword(word, m, r)


def test_check_subword():
    assert check_subword([3, 2, 4, 2], 2, (0, 4), 2)
    assert not check_subword([3, 1, 4, 2], 2, (0, 4), 1)
    assert not check_subword([3, 2, 4, 3], 2, (0, 4), 2)
