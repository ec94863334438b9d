from collections import Counter

import numpy as np
import pytest

from pentagulation.formats import (
    PLANAR_CODE_HEADER,
    AsymmetricAdjacency,
    BadHeader,
    NeighborOutOfRange,
    NotThreeConnected,
    SvgOptions,
    TruncatedStream,
    UnbalancedAdjacency,
    UnknownLabel,
    find_crossings,
    leader_layout,
    parse_ascii_adjacency,
    parse_ascii_stream,
    parse_planar_code,
    render_dot,
    render_svg,
    tutte_layout,
    write_ascii_adjacency,
    write_planar_code,
)
from pentagulation.pg_search import construct_gn
from pentagulation.plane_graph import build_plane_graph, canonical_code, dual, icosahedron, tetrahedron

from conftest import ASCII_GRAPH_1, ASCII_GRAPH_2

TETRA_BYTES = bytes.fromhex("04 02 03 04 00 01 04 03 00 01 02 04 00 01 03 02 00")


def test_tetrahedron_bytes():
    (g,) = parse_planar_code(TETRA_BYTES)
    assert g.vertex_count == 4 and g.is_triangulation()
    assert write_planar_code([g]) == TETRA_BYTES
    assert canonical_code(g) == canonical_code(tetrahedron())


def test_planar_code_header_is_optional():
    plain = parse_planar_code(TETRA_BYTES * 2)
    headed = parse_planar_code(PLANAR_CODE_HEADER + TETRA_BYTES * 2)
    assert len(plain) == len(headed) == 2
    assert [g.rotations for g in plain] == [g.rotations for g in headed]
    assert write_planar_code(plain, header=True) == PLANAR_CODE_HEADER + TETRA_BYTES * 2
    assert parse_planar_code(b"") == []


@pytest.mark.parametrize(
    "data, exc",
    [
        (TETRA_BYTES[:-1], TruncatedStream),
        (TETRA_BYTES[:5], TruncatedStream),
        (b"\x00" + TETRA_BYTES, BadHeader),
        (b">>embed_code<<" + TETRA_BYTES, BadHeader),
        (bytes.fromhex("04 02 03 05 00 01 04 03 00 01 02 04 00 01 03 02 00"), NeighborOutOfRange),
        (bytes.fromhex("04 02 03 04 00 01 04 03 00 01 02 04 00 01 02 00"), AsymmetricAdjacency),
    ],
)
def test_planar_code_errors(data, exc):
    with pytest.raises(exc):
        parse_planar_code(data)


@pytest.mark.parametrize("text", [ASCII_GRAPH_1, ASCII_GRAPH_2])
def test_ascii_fixtures(text):
    g = parse_ascii_adjacency(text)
    assert g.vertex_count == 16 and g.is_triangulation()
    assert Counter(g.degrees) == Counter({6: 4, 5: 12})
    assert g.neighbors(0) == (1, 2, 3, 4, 5)


def test_ascii_count_prefix_and_terminators():
    base = parse_ascii_adjacency(ASCII_GRAPH_1)
    body = ASCII_GRAPH_1.rstrip(";")
    for text in (body, body + ".", "16 " + body, "16 " + body + ";"):
        assert parse_ascii_adjacency(text).rotations == base.rotations
    with pytest.raises(UnbalancedAdjacency):
        parse_ascii_adjacency("15 " + body)


def test_ascii_errors():
    with pytest.raises(UnknownLabel):
        parse_ascii_adjacency("bcd,acd,abd,abe")
    with pytest.raises(UnbalancedAdjacency):
        parse_ascii_adjacency("bcd,acd,abd,ab")
    with pytest.raises(UnknownLabel):
        parse_ascii_adjacency("1:2,3;2:1,9;3:1,2")


def test_numeric_variant_above_26_vertices():
    g = construct_gn(13)
    text = write_ascii_adjacency(g)
    assert text.startswith("51 1:")
    h = parse_ascii_adjacency(text)
    assert h.rotations == g.rotations


def test_ascii_roundtrip_is_byte_exact():
    g = parse_ascii_adjacency(ASCII_GRAPH_2)
    text = write_ascii_adjacency(g, count=False)
    assert text == ASCII_GRAPH_2.rstrip(".")
    assert write_ascii_adjacency(parse_ascii_adjacency(text), count=False) == text


def test_ascii_stream():
    graphs = parse_ascii_stream(ASCII_GRAPH_1 + "\n\n" + ASCII_GRAPH_2 + "\n")
    assert len(graphs) == 2
    assert canonical_code(graphs[0]) != canonical_code(graphs[1])


def test_planar_code_roundtrip():
    graphs = [tetrahedron(), icosahedron(), dual(icosahedron()), construct_gn(13)]
    data = write_planar_code(graphs)
    back = parse_planar_code(data)
    assert [g.rotations for g in back] == [g.rotations for g in graphs]
    assert write_planar_code(back) == data


def test_tutte_layout_of_dodecahedron():
    g = dual(icosahedron())
    xy = tutte_layout(g)
    assert xy.shape == (20, 2) and np.all(np.isfinite(xy))
    assert find_crossings(g, xy) == []
    # outer face sits on the unit circle
    outer = g.faces[0]
    assert np.allclose(np.linalg.norm(xy[list(outer)], axis=1), 1.0)


def test_tutte_layout_with_square_outer(pg_results):
    (rec,) = pg_results[4].classes
    xy = tutte_layout(rec.graph, rec.outer_face)
    assert len(rec.graph.faces[rec.outer_face]) == 4
    assert find_crossings(rec.graph, xy) == []


def test_tutte_layout_needs_three_connectivity():
    square = build_plane_graph([(1, 3), (2, 0), (3, 1), (0, 2)])
    with pytest.raises(NotThreeConnected):
        tutte_layout(square)


def test_find_crossings_detects_a_bad_drawing():
    g = tetrahedron()
    xy = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    assert find_crossings(g, xy)


def test_leader_layout():
    g = icosahedron()
    xy = leader_layout(g, 0)
    assert np.all(np.isnan(xy[0]))
    assert np.all(np.isfinite(np.delete(xy, 0, axis=0)))
    assert find_crossings(g, xy, skip=0) == []


def test_svg_of_dodecahedron():
    g = dual(icosahedron())
    xy = tutte_layout(g)
    svg = render_svg(g, xy)
    assert svg.count("<circle") == 20 and svg.count("<line") == 30
    assert svg == render_svg(g, tutte_layout(g))
    assert 'class="highlight"' not in svg
    hl = render_svg(g, xy, SvgOptions(highlight=frozenset({g.edges[0]}), labels=False))
    assert hl.count('class="highlight"') == 1 and "<text" not in hl


def test_svg_leader_is_omitted():
    g = icosahedron()
    svg = render_svg(g, leader_layout(g, 0), SvgOptions(leader=0))
    assert svg.count("<circle") == 11 and svg.count("<line") == 30 - 5


def test_render_dot():
    dot = render_dot(tetrahedron(), "T")
    assert dot.startswith("graph T {") and dot.rstrip().endswith("}")
    assert dot.count(" -- ") == 6
