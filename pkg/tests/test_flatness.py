# tests/test_flatness.py

import dataclasses

import pytest

from minorkit.core.flatness import (
    EXTERNAL,
    INTERNAL,
    PERIMETRIC,
    Flap,
    Painting,
    check_tilt,
    classify_cells,
    compass,
    compute_tilt,
    flap_bases,
    flatness_document,
    influence,
    is_regular,
    load_flatness,
    trivial_certificate,
    validate_flatness,
    validate_rendition,
)
from minorkit.core.graph import add_edges
from minorkit.core.walls import build_elementary_wall
from minorkit.errors import InvalidArgument, Unsupported
from minorkit.utils.schemas import FlatnessDocument


@pytest.fixture
def flat5():
    g, w = build_elementary_wall(5)
    return g, w, trivial_certificate(g, w)


def _edge_cell(cert, edge):
    return next(c for c, flap in cert.sigma.items() if flap.edges == frozenset({edge}))


def test_trivial_certificate_is_valid(flat5):
    g, w, cert = flat5
    verdict = validate_flatness(g, w, cert)
    assert verdict and verdict.failed is None
    assert len(cert.sigma) == g.m
    assert set(cert.omega) == set(w.perimeter())


def test_subdivided_wall_is_flat_too():
    g, w = build_elementary_wall(3, {((3, 1), (3, 2)): 2})
    assert validate_flatness(g, w, trivial_certificate(g, w))


def test_crossing_chord_is_unsupported():
    g, w = build_elementary_wall(3)
    g = add_edges(g, [(w.vertex(1, 1), w.vertex(6, 3))])
    with pytest.raises(Unsupported):
        trivial_certificate(g, w)


def test_shared_edge_breaks_axiom_two(flat5):
    g, w, cert = flat5
    a, b = w.perimeter()[:2]
    c = _edge_cell(cert, (min(a, b), max(a, b)))
    other = next(d for d, flap in cert.sigma.items() if d != c and a in flap.vertices)
    sigma = dict(cert.sigma)
    sigma[other] = Flap(sigma[other].vertices | {b}, sigma[other].edges | {(min(a, b), max(a, b))})
    verdict = validate_rendition(g, cert.omega, cert.painting, sigma, cert.pi, vertices=cert.Y)
    assert not verdict and verdict.failed == "2"


def test_extra_shared_vertex_breaks_axiom_four(flat5):
    g, w, cert = flat5
    c = 0
    outsider = next(v for v in range(g.n) if v not in cert.sigma[c].vertices)
    sigma = dict(cert.sigma)
    sigma[c] = Flap(sigma[c].vertices | {outsider}, sigma[c].edges)
    verdict = validate_rendition(g, cert.omega, cert.painting, sigma, cert.pi, vertices=cert.Y)
    assert verdict.failed == "4"


def test_reordered_omega_breaks_axiom_five(flat5):
    g, w, cert = flat5
    omega = list(cert.omega)
    omega[0], omega[2] = omega[2], omega[0]
    verdict = validate_rendition(g, omega, cert.painting, cert.sigma, cert.pi, vertices=cert.Y)
    assert verdict.failed == "5"
    assert validate_rendition(g, list(reversed(cert.omega)), cert.painting, cert.sigma, cert.pi)


def test_uncovered_edge_breaks_axiom_one(flat5):
    g, w, cert = flat5
    sigma = dict(cert.sigma)
    sigma[0] = Flap(sigma[0].vertices)
    verdict = validate_rendition(g, cert.omega, cert.painting, sigma, cert.pi)
    assert verdict.failed == "1"


def test_structural_failures(flat5):
    g, w, cert = flat5
    assert validate_rendition(g, cert.omega, cert.painting, cert.sigma, {0: 0}).failed == "pi"
    sigma = dict(cert.sigma)
    sigma.pop(0)
    assert validate_rendition(g, cert.omega, cert.painting, sigma, cert.pi).failed == "sigma"
    crowded = Painting(cert.painting.nodes, {0: (0, 1, 2, 3)}, cert.painting.boundary)
    assert validate_rendition(g, cert.omega, crowded, cert.sigma, cert.pi).failed == "painting"


def test_flatness_preconditions(flat5):
    g, w, cert = flat5
    short = dataclasses.replace(cert, Y=cert.Y - {w.vertex(5, 3)})
    assert validate_flatness(g, w, short).failed == "separation"
    no_pegs = dataclasses.replace(cert, pegs=frozenset())
    assert validate_flatness(g, w, no_pegs).failed == "pegs"
    rotated = dataclasses.replace(cert, omega=cert.omega[1:] + cert.omega[:1])
    assert validate_flatness(g, w, rotated)
    shuffled = dataclasses.replace(cert, omega=(cert.omega[1], cert.omega[0]) + cert.omega[2:])
    assert validate_flatness(g, w, shuffled).failed == "omega"


def test_painting_rejects_bad_rotation(flat5):
    _, _, cert = flat5
    rotation = dict(cert.painting.rotation)
    rotation.pop(next(iter(rotation)))
    with pytest.raises(InvalidArgument):
        Painting(cert.painting.nodes, cert.painting.cells, cert.painting.boundary, rotation).embedding()


def test_classification_against_central_subwall(flat5):
    g, w, cert = flat5
    sub = w.central_subwall(3)
    cycle = sub.perimeter()
    cls = classify_cells(cert, w, cycle)
    assert len(cls.cells(PERIMETRIC)) == len(cycle)
    inside = cls.cells(INTERNAL)
    assert len(inside) >= 5
    assert len(cls.cells(EXTERNAL)) == g.m - len(cycle) - len(inside)
    for c in inside:
        assert not cert.sigma[c].vertices & set(w.perimeter())
    assert set(influence(cert, w, cycle)) == set(cls.cells(PERIMETRIC)) | set(inside)


def test_whole_wall_is_regular(flat5):
    g, w, cert = flat5
    cls = classify_cells(cert, w)
    assert cls.cells(EXTERNAL) == []
    assert is_regular(cert, w)
    assert len(influence(cert, w)) == g.m


def test_classification_rejects_bad_cycles(flat5):
    g, w, cert = flat5
    with pytest.raises(InvalidArgument):
        classify_cells(cert, w, w.perimeter()[:2])
    a, b = w.vertex(1, 1), w.vertex(5, 3)
    with pytest.raises(InvalidArgument):
        classify_cells(cert, w, [a, b, w.vertex(9, 5)])


def test_compass_and_bases(flat5):
    g, w, cert = flat5
    sub, ids = compass(g, cert)
    assert sub == g and ids == list(range(g.n))
    bases = flap_bases(cert)
    assert all(bases[c] == cert.sigma[c].vertices for c in cert.sigma)


def test_tilt_at_central_subwall(flat5):
    g, w, cert = flat5
    sub = w.central_subwall(3)
    tilt_wall, tilt = compute_tilt(g, w, cert, sub)
    assert validate_flatness(g, tilt_wall, tilt)
    assert check_tilt(g, w, cert, sub, tilt_wall, tilt) == []
    assert tilt.Y < cert.Y
    assert set(tilt.omega) == set(sub.perimeter())


def test_check_tilt_reports_a_foreign_wall(flat5):
    g, w, cert = flat5
    sub = w.central_subwall(3)
    assert "flatness" in check_tilt(g, w, cert, sub, w.subwall((1, 3), (1, 3)), cert)


def test_document_round_trip(flat5):
    g, w, cert = flat5
    doc = FlatnessDocument.model_validate_json(flatness_document(g, w, cert).model_dump_json())
    g2, w2, cert2 = load_flatness(doc)
    assert g2 == g and w2.paths == w.paths
    assert cert2.sigma == cert.sigma and cert2.pi == cert.pi
    assert validate_flatness(g2, w2, cert2)


@pytest.fixture
def star_cell(flat5):
    """The trivial certificate with the three edges at an inner wall vertex merged into one cell."""
    g, w, cert = flat5
    rim = set(w.perimeter())
    v = next(u for u in range(g.n) if g.degree(u) == 3 and u not in rim)
    star = {c for c, flap in cert.sigma.items() if v in flap.vertices}
    new = max(cert.sigma) + 1
    cells = {c: ns for c, ns in cert.painting.cells.items() if c not in star}
    cells[new] = g.neighbors(v)
    sigma = {c: flap for c, flap in cert.sigma.items() if c not in star}
    sigma[new] = Flap.of_edges((v, u) for u in g.neighbors(v))
    nodes = tuple(u for u in cert.painting.nodes if u != v)
    painting = Painting(nodes, cells, cert.painting.boundary)
    merged = dataclasses.replace(cert, painting=painting, sigma=sigma, pi={u: u for u in nodes}, _embedding=None)
    return g, w, merged, new


def test_certificate_with_a_three_node_cell_is_valid(star_cell):
    g, w, cert, c = star_cell
    assert len(cert.painting.cells[c]) == 3
    assert len(cert.sigma[c].vertices) == 4
    verdict = validate_flatness(g, w, cert)
    assert verdict and verdict.failed is None


def test_misplaced_base_breaks_axiom_three(star_cell):
    g, w, cert, c = star_cell
    a = cert.painting.cells[c][0]
    x = next(u for u in cert.painting.nodes if u not in cert.sigma[c].vertices)
    pi = dict(cert.pi)
    pi[a], pi[x] = x, a
    verdict = validate_rendition(g, cert.omega, cert.painting, cert.sigma, pi, vertices=cert.Y)
    assert not verdict and verdict.failed == "3"
