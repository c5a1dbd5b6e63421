# tests/test_grids.py

import pytest

from minorkit.core.graph import Graph, grid_graph
from minorkit.core.grids import (
    PartiallyTriangulatedGrid,
    build_grid,
    central_q_grid,
    column_segment,
    grid_from_graph,
    grid_layers,
    is_scattered,
    middle_horizontal_path,
    random_triangulated_grid,
    row_segment,
    scattered_positions,
    vertical_path,
)
from minorkit.errors import InvalidArgument


def test_grid_coordinates():
    grid = build_grid(4, 3)
    assert grid.n == 12 and grid.middle == 2
    assert grid.vertex(1, 1) == 0 and grid.vertex(4, 3) == 11
    assert grid.coords(6) == (3, 2)
    assert grid.at(2, 0) == grid.vertex(2, 2)
    assert grid.position(grid.at(3, 0)) == 3
    with pytest.raises(InvalidArgument):
        grid.vertex(5, 1)
    with pytest.raises(InvalidArgument):
        grid.position(0)
    with pytest.raises(InvalidArgument):
        PartiallyTriangulatedGrid(0, 3)


def test_fully_triangulated_grid_is_planar_and_valid():
    grid = random_triangulated_grid(5, 4, seed=1, density=1.0)
    assert len(grid.chords) == 4 * 3
    assert grid.is_valid()
    assert grid.graph.m == grid_graph(5, 4).m + 12


def test_grid_from_graph_recovers_chords():
    grid = random_triangulated_grid(4, 4, seed=3)
    again = grid_from_graph(grid.graph, 4, 4)
    assert again == grid
    with pytest.raises(InvalidArgument):
        grid_from_graph(Graph(16), 4, 4)
    with pytest.raises(InvalidArgument):
        grid_from_graph(grid.graph, 8, 2)


def test_path_selectors():
    grid = build_grid(5, 5)
    assert vertical_path(grid, 1) == [0, 5, 10, 15, 20]
    assert middle_horizontal_path(grid) == [10, 11, 12, 13, 14]
    assert column_segment(grid, 2, 1, -1) == [16, 11, 6]
    assert row_segment(grid, 3, 1, 0) == [12, 11, 10]
    with pytest.raises(InvalidArgument):
        column_segment(grid, 2, 0, 0)


def test_central_q_grid():
    sub, ids = central_q_grid(build_grid(5, 5), 3)
    assert sub == grid_graph(3, 3)
    assert ids[0] == 6 and ids[-1] == 18
    with pytest.raises(InvalidArgument):
        central_q_grid(build_grid(5, 5), 6)


def test_grid_layers():
    layers = grid_layers(build_grid(4, 4))
    assert [len(layer) for layer in layers] == [12, 4]
    assert [len(layer) for layer in grid_layers(build_grid(3, 3))] == [8, 1]
    g = grid_graph(4, 4)
    ring = layers[0]
    assert all(g.has_edge(a, b) for a, b in zip(ring, ring[1:] + ring[:1]))


def test_is_scattered():
    path = list(range(10))
    assert is_scattered([{0, 3}, {6, 9}], path, r=2, h=2, d=2)
    assert not is_scattered([{0, 3}, {6, 9}], path, r=2, h=2, d=3)
    assert not is_scattered([{0, 3}], path, r=2, h=2, d=0)
    assert not is_scattered([{0, 3}, {3, 9}], path, r=2, h=2, d=0)
    assert not is_scattered([{0, 30}, {6, 9}], path, r=2, h=2, d=0)


def test_scattered_positions():
    assert scattered_positions(3, 9, 3) == [1, 5, 9]
    spread = scattered_positions(4, 30, 2, seed=7)
    assert all(b - a > 2 for a, b in zip(spread, spread[1:]))
    assert spread[0] >= 1 and spread[-1] <= 30
    with pytest.raises(InvalidArgument):
        scattered_positions(4, 9, 3)
