# tests/test_graph_io.py

import json

import pytest

from minorkit.core.graph import Graph, complete_bipartite, complete_graph, petersen_graph
from minorkit.errors import ParseError
from minorkit.utils.graph_io import (
    graph_from_json,
    graph_to_json,
    load_family,
    load_graph,
    named_graph,
    parse_graph6,
    read_graph6_file,
    read_td,
    to_graph6,
    write_graph6_file,
    write_td,
)


@pytest.mark.parametrize("g6, n, m", [("D~{", 5, 10), ("Bw", 3, 3), ("@", 1, 0)])
def test_parse_graph6(g6, n, m):
    g = parse_graph6(g6)
    assert (g.n, g.m) == (n, m)
    assert to_graph6(g) == g6


def test_graph6_header_and_bytes():
    assert parse_graph6(b">>graph6<<D~{\n") == complete_graph(5)


@pytest.mark.parametrize("bad", ["", "D~{\x7f", "D~"])
def test_parse_graph6_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_graph6_file(tmp_path):
    path = tmp_path / "graphs.g6"
    write_graph6_file(path, [complete_graph(5), petersen_graph()])
    assert read_graph6_file(path) == [complete_graph(5), petersen_graph()]
    path.write_text("D~{\nnot graph6\n")
    with pytest.raises(ParseError, match=":2:"):
        read_graph6_file(path)


def test_json_documents():
    g = complete_bipartite(2, 2)
    doc = graph_to_json(g)
    assert doc == {"n": 4, "edges": [[0, 2], [0, 3], [1, 2], [1, 3]]}
    assert graph_from_json(json.dumps(doc)) == g
    with pytest.raises(ParseError):
        graph_from_json({"n": 2, "edges": [[0, 5]]})
    with pytest.raises(ParseError):
        graph_from_json('{"edges": []}')


@pytest.mark.parametrize("name, n, m", [
    ("K5", 5, 10), ("K_{3,3}", 6, 9), ("P4", 4, 3), ("C5", 5, 5), ("E3", 3, 0),
    ("petersen", 10, 15), ("grid:3x4", 12, 17), ("2K2", 4, 2),
])
def test_named_graphs(name, n, m):
    g = named_graph(name)
    assert (g.n, g.m) == (n, m)


def test_load_graph_resolves_each_form(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_json(complete_graph(3))))
    assert load_graph(str(path)) == complete_graph(3)
    assert load_graph('{"n": 2, "edges": [[0, 1]]}') == Graph(2, [(0, 1)])
    assert load_family(["K5", "D~{"]) == [complete_graph(5), complete_graph(5)]


def test_td_round_trip():
    text = write_td(4, {0: [0, 1, 2], 1: [2, 3]}, [(0, 1)])
    assert text.splitlines()[0] == "s td 2 3 4"
    assert read_td(text) == (4, {0: [0, 1, 2], 1: [2, 3]}, [(0, 1)])


@pytest.mark.parametrize("text", [
    "b 1 1 2\n",
    "s td 2 2 3\nb 1 1 2\n",
    "s td 1 2 3\nb 1 1 x\n",
    "s td 1 2 3\nb 1 1 2\nb 1 2 3\n",
    "c nothing here\n",
])
def test_read_td_rejects_malformed(text):
    with pytest.raises(ParseError):
        read_td(text)
