from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentagulation.generator import DegreeSpec, enumerate_triangulations
from pentagulation.plane_graph import (
    Disconnected,
    DualNotSimple,
    EdgeNotPresent,
    EulerViolation,
    LoopOrMultiEdge,
    NonSymmetricAdjacency,
    PlaneGraph,
    ResultDisconnected,
    add_chord,
    build_plane_graph,
    canonical_code,
    delete_vertex,
    dual,
    from_faces,
    icosahedron,
    is_three_connected,
    remove_edges,
    tetrahedron,
)
from pentagulation.formats import parse_ascii_adjacency

from conftest import ASCII_GRAPH_1, ASCII_GRAPH_2

TRIS_9 = enumerate_triangulations(DegreeSpec.unconstrained(9))


def euler_ok(g: PlaneGraph) -> bool:
    return (
        g.vertex_count - g.edge_count + g.face_count == 2
        and sum(g.degrees) == 2 * g.edge_count
        and sum(g.face_sizes) == 2 * g.edge_count
    )


def test_tetrahedron_counts():
    g = tetrahedron()
    assert (g.vertex_count, g.edge_count, g.face_count) == (4, 6, 4)
    assert g.face_sizes == [3, 3, 3, 3]


def test_icosahedron_counts():
    g = icosahedron()
    assert (g.vertex_count, g.edge_count, g.face_count) == (12, 30, 20)
    assert set(g.degrees) == {5}
    assert g.is_triangulation()


def test_faces_follow_clockwise_convention():
    # face i holds the dart (f[j], f[j+1]); the next dart turns to the
    # successor of the reverse dart in the head's rotation
    g = icosahedron()
    for f, face in enumerate(g.faces):
        for j, u in enumerate(face):
            v = face[(j + 1) % len(face)]
            assert g.face_of_dart(u, v) == f
            assert g.next_dart(u, v) == (v, face[(j + 2) % len(face)])


def test_k5_rotation_system_is_rejected():
    rots = [[w for w in range(5) if w != v] for v in range(5)]
    with pytest.raises(EulerViolation):
        build_plane_graph(rots)


@pytest.mark.parametrize(
    "rots, exc",
    [
        ([(1,), ()], NonSymmetricAdjacency),
        ([(1, 1), (0, 0)], LoopOrMultiEdge),
        ([(0, 1), (0,)], LoopOrMultiEdge),
        ([(1,), (0,), (3,), (2,)], Disconnected),
    ],
)
def test_invalid_rotation_systems(rots, exc):
    with pytest.raises(exc):
        build_plane_graph(rots)


def test_dual_of_icosahedron_is_dodecahedron():
    d = dual(icosahedron())
    assert (d.vertex_count, d.edge_count, d.face_count) == (20, 30, 12)
    assert set(d.face_sizes) == {5}
    assert set(d.degrees) == {3}
    assert is_three_connected(d)


def test_tetrahedron_is_self_dual():
    assert canonical_code(dual(tetrahedron())) == canonical_code(tetrahedron())


def test_dual_counts_and_face_sizes():
    for g in TRIS_9:
        d = dual(g)
        assert (d.vertex_count, d.edge_count, d.face_count) == (g.face_count, g.edge_count, g.vertex_count)
        assert sorted(d.face_sizes) == sorted(g.degrees)


@pytest.mark.parametrize("v", range(4, 11))
def test_dual_is_an_involution(v):
    for g in enumerate_triangulations(DegreeSpec.unconstrained(v)):
        d = dual(g)
        assert is_three_connected(d)
        assert canonical_code(dual(d)) == canonical_code(g)


def test_dual_rejects_bridges_and_double_adjacency():
    path = build_plane_graph([(1,), (0, 2), (1,)])
    with pytest.raises(DualNotSimple):
        dual(path)
    square = from_faces([(0, 1, 2, 3), (3, 2, 1, 0)])
    with pytest.raises(DualNotSimple):
        dual(square)


def test_three_connectivity():
    assert is_three_connected(dual(icosahedron()))
    assert is_three_connected(tetrahedron())
    c4 = from_faces([(0, 1, 2, 3), (3, 2, 1, 0)])
    assert not is_three_connected(c4)
    # two pentagons glued along an edge: a 2-connected pentagulation of an 8-gon
    glued = from_faces([(0, 1, 2, 3, 4), (1, 0, 5, 6, 7), (4, 3, 2, 1, 7, 6, 5, 0)])
    assert sorted(glued.face_sizes) == [5, 5, 8]
    assert not is_three_connected(glued)


def test_canonical_code_distinguishes_the_two_ascii_graphs():
    g1, g2 = parse_ascii_adjacency(ASCII_GRAPH_1), parse_ascii_adjacency(ASCII_GRAPH_2)
    assert g1.degree_multiset() == g2.degree_multiset() == Counter({5: 12, 6: 4})
    assert canonical_code(g1) != canonical_code(g2)


def test_canonical_codes_distinct_within_a_run():
    codes = [canonical_code(g) for g in TRIS_9]
    assert len(set(codes)) == len(codes) == 50


@settings(max_examples=60, deadline=None)
@given(idx=st.integers(0, len(TRIS_9) - 1), perm=st.permutations(range(9)), mirror=st.booleans())
def test_canonical_code_invariance(idx, perm, mirror):
    g = TRIS_9[idx]
    h = g.relabel(perm)
    if mirror:
        h = h.mirror()
    assert canonical_code(h) == canonical_code(g)


@settings(max_examples=30, deadline=None)
@given(idx=st.integers(0, len(TRIS_9) - 1), shifts=st.lists(st.integers(0, 8), min_size=9, max_size=9))
def test_canonical_code_ignores_rotation_start(idx, shifts):
    g = TRIS_9[idx]
    rots = []
    for v, rot in enumerate(g.rotations):
        s = shifts[v] % len(rot)
        rots.append(rot[s:] + rot[:s])
    assert canonical_code(build_plane_graph(rots)) == canonical_code(g)


def test_chiral_graphs_share_code_with_mirror():
    chiral = [g for g in enumerate_triangulations(DegreeSpec.unconstrained(10)) if g.mirror() != g]
    assert chiral
    for g in chiral:
        assert canonical_code(g.mirror()) == canonical_code(g)


def test_remove_edges():
    g = tetrahedron()
    assert remove_edges(g, []) is g
    h = remove_edges(g, [(0, 1)])
    assert (h.vertex_count, h.edge_count, h.face_count) == (4, 5, 3)
    assert sorted(h.face_sizes) == [3, 3, 4]
    with pytest.raises(EdgeNotPresent):
        remove_edges(h, [(0, 1)])
    star = build_plane_graph([(1, 2), (0,), (0,)])
    with pytest.raises(ResultDisconnected):
        remove_edges(star, [(0, 1)])


def test_remove_then_readd_restores_code():
    g = icosahedron()
    u, v = 0, g.neighbors(0)[0]
    h = remove_edges(g, [(u, v)])
    f = h.face_sizes.index(4)
    face = h.faces[f]
    back = add_chord(h, f, face.index(u), face.index(v))
    assert canonical_code(back) == canonical_code(g)


def test_delete_vertex():
    h, new = delete_vertex(icosahedron(), 0)
    assert h.vertex_count == 11 and new[0] == -1
    assert sorted(h.face_sizes) == [3] * 15 + [5]
    t, _ = delete_vertex(tetrahedron(), 3)
    assert (t.vertex_count, t.edge_count, t.face_count) == (3, 3, 2)
    star = build_plane_graph([(1, 2), (0,), (0,)])
    with pytest.raises(ResultDisconnected):
        delete_vertex(star, 0)


def test_delete_vertex_keeps_euler_on_generator_output():
    for g in TRIS_9:
        for v in range(g.vertex_count):
            h, _ = delete_vertex(g, v)
            assert euler_ok(h)


def test_add_chord_rejects_existing_edge():
    g = remove_edges(tetrahedron(), [(0, 1)])
    sq = g.face_sizes.index(4)
    face = g.faces[sq]
    other = [w for w in face if w not in (0, 1)]
    with pytest.raises(LoopOrMultiEdge):
        add_chord(g, sq, face.index(other[0]), face.index(other[1]))
