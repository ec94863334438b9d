"""End-to-end acceptance criteria.

Each test records one ``criterion NN: PASS|FAIL`` line, printed with ``-s``
and collected in the terminal summary.
"""

from collections import Counter

import pytest

from pentagulation.formats import (
    find_crossings,
    parse_ascii_adjacency,
    parse_planar_code,
    tutte_layout,
    write_ascii_adjacency,
    write_planar_code,
)
from pentagulation.generator import DegreeSpec, enumerate_triangulations, oracle_enumerate, parse_spec
from pentagulation.patterns import find_pattern_occurrences, pattern_catalog
from pentagulation.pg_search import construct_gn, decompose_5k3l, pattern_table, pg_upper_bound
from pentagulation.plane_graph import canonical_code, dual, icosahedron, is_three_connected
from pentagulation.verifier import Verdict, count_pentagon_fillings, sweep

from conftest import ASCII_GRAPH_1, ASCII_GRAPH_2, CLASS_TABLE, PG_TABLE

TOL = 1e-7

# surplus-2 table, rows i..v; None marks the cells left blank because the
# row shares its degree multiset with an earlier one
SURPLUS2_COUNTS = {
    3: [0, 1, 1, 0, 1],
    4: [3, 2, 1, 0, None],
    6: [3, 1, None, 0, 0],
    7: [2, 3, 0, 0, 0],
    8: [1, 1, 0, 0, 0],
}
SURPLUS2_IDS = ["T2.i", "T2.ii", "T2.iii", "T2.iv", "T2.v"]

# surplus-3 table, as "count(containing)"; "0" for blank cells
SURPLUS3_N3 = {
    "T3.1i": "5(1)", "T3.1ii": "2(0)", "T3.1iii": "0",
    "T3.2i": "8(4)", "T3.2ii": "4(2)", "T3.2iii": "2(1)", "T3.2iv": "4(0)",
    "T3.3i": "3(2)", "T3.3ii": "5(3)",
    "T3.4i": "4(0)", "T3.4ii": "0", "T3.4iii": "2(0)",
    "T3.5i": "2(1)", "T3.5ii": "1(0)",
}
SURPLUS3_N7 = {
    "T3.1i": "5(1)", "T3.1ii": "0", "T3.1iii": "0",
    "T3.2i": "23(5)", "T3.2ii": "6(0)", "T3.2iii": "0", "T3.2iv": "6(3)",
    "T3.3i": "16(7)", "T3.3ii": "2(0)",
    "T3.4i": "6(0)", "T3.4ii": "3(0)", "T3.4iii": "0",
    "T3.5i": "2(0)", "T3.5ii": "0",
}
# the published n=7 cells of rows 4(ii), 4(iii), 5(i); our enumeration gives
# 3(0), 0 and 2(0) instead
SURPLUS3_N7_PUBLISHED = {"T3.4ii": "0", "T3.4iii": "2(0)", "T3.5i": "0"}

SURPLUS3_LARGER_N = {
    9: {"T3.1i": "7(3)", "T3.2i": "8(7)", "T3.3i": "2(2)", "T3.4i": "7(3)"},
    10: {"T3.1i": "6(6)", "T3.4i": "6(6)", "T3.5i": "3(3)"},
    11: {"T3.1i": "3(3)", "T3.2i": "2(2)", "T3.4i": "1(1)"},
    12: {"T3.1i": "6(2)", "T3.2i": "2(2)", "T3.3i": "1(1)"},
}


def letters(*pairs):
    return tuple(sorted(tuple(sorted(ord(c) - ord("a") for c in p)) for p in pairs))


def tally(n, surplus):
    return {t.pattern_id: str(t) for t in pattern_table(n, surplus)}


def test_criterion_01_pg_table(criterion, pg_results):
    with criterion("01", "Pg(n) for n = 3..12"):
        got = {n: r.pg_value for n, r in pg_results.items()}
        for n, r in pg_results.items():
            print(f"  {r}")
        assert got == PG_TABLE
        assert all(r.exact for r in pg_results.values())


def test_criterion_02_class_counts(criterion, pg_results):
    with criterion("02", "number of minimal pentagulation classes"):
        assert {n: len(r.classes) for n, r in pg_results.items()} == CLASS_TABLE
        for r in pg_results.values():
            assert len({c.code for c in r.classes}) == len(r.classes)


def test_criterion_03_surplus_two_table(criterion, pool):
    with criterion("03", "surplus-2 triangulation counts"):
        for n, row in SURPLUS2_COUNTS.items():
            tallies = pattern_table(n, 2)
            assert [t.pattern_id for t in tallies] == SURPLUS2_IDS
            cat = {p.id: p for p in pattern_catalog(2, n)}
            for t, want in zip(tallies, row):
                if want is None:
                    # the blank cell repeats an earlier row's degree multiset
                    assert cat[t.pattern_id].collides_with
                else:
                    assert t.triangulations == want, (n, t.pattern_id)
            for pid in SURPLUS2_IDS:
                spec = DegreeSpec.of(n + 11, dict(cat[pid].degree_multiset))
                pool.extend(enumerate_triangulations(spec))


def test_criterion_04_surplus_three_table(criterion, pool):
    with criterion("04", "surplus-3 table, n = 3 and n = 7 columns"):
        assert tally(3, 3) == SURPLUS3_N3
        got7 = tally(7, 3)
        assert got7 == SURPLUS3_N7
        assert got7["T3.2i"] == "23(5)" and got7["T3.3i"] == "16(7)"
        for n in (3, 7):
            for p in pattern_catalog(3, n):
                pool.extend(enumerate_triangulations(DegreeSpec.of(n + 13, dict(p.degree_multiset))))


@pytest.mark.xfail(strict=True, reason="three published n=7 cells disagree with exhaustive enumeration")
def test_criterion_04_published_n7_cells(criterion):
    with criterion("04b", "surplus-3 table, published n = 7 cells 4(ii), 4(iii), 5(i)"):
        got7 = tally(7, 3)
        assert {k: got7[k] for k in SURPLUS3_N7_PUBLISHED} == SURPLUS3_N7_PUBLISHED


@pytest.mark.extended
def test_surplus_tables_for_larger_n():
    for n, cells in SURPLUS3_LARGER_N.items():
        got = tally(n, 3)
        assert {k: v for k, v in got.items() if v != "0"} == cells
        assert all(t.triangulations == 0 for t in pattern_table(n, 2))


def test_criterion_05_no_surplus_one(criterion, pg_results, pool):
    with criterion("05", "no pentagulation with surplus 1"):
        for n in (4, 6, 7, 8):
            assert all(e.accepted == 0 for e in pg_results[n].log if e.d == 1)
        (g,) = enumerate_triangulations(parse_spec("13:4x1,6x2"))
        a, b = [v for v, d in enumerate(g.degrees) if d == 6]
        assert not g.has_edge(a, b)
        assert enumerate_triangulations(parse_spec("16:6x2,7x1")) == []
        assert enumerate_triangulations(parse_spec("17:6x2,8x1")) == []
        pool.add(g)


def test_criterion_06_single_exceptional_vertex(criterion, pool):
    with criterion("06", "one vertex of degree n, all others 5"):
        for n in (3, 4, 6, 7, 8, 9):
            assert enumerate_triangulations(DegreeSpec.of(n + 7, {n: 1})) == []
        (g,) = enumerate_triangulations(DegreeSpec.of(12, {5: 1}))
        assert canonical_code(g) == canonical_code(icosahedron())
        pool.add(g)


def test_criterion_07_generator_oracle(criterion):
    with criterion("07", "generator equals the vertex-splitting oracle for v = 4..9"):
        counts = []
        for v in range(4, 10):
            got = {canonical_code(g) for g in enumerate_triangulations(DegreeSpec.unconstrained(v))}
            want = {canonical_code(g) for g in oracle_enumerate(v)}
            assert got == want
            counts.append(len(got))
        assert counts == [1, 1, 2, 5, 14, 50]


def test_criterion_08_ascii_fixtures(criterion):
    with criterion("08", "ASCII fixtures and their 2(iii) subgraphs"):
        g1 = parse_ascii_adjacency(ASCII_GRAPH_1)
        g2 = parse_ascii_adjacency(ASCII_GRAPH_2)
        pats = {p.id: p for p in pattern_catalog(3, 3)}
        t2, t4 = pats["T3.2iii"], pats["T3.4iii"]
        assert find_pattern_occurrences(g1, t2) == [] and find_pattern_occurrences(g1, t4) == []
        assert find_pattern_occurrences(g2, t4) == []
        assert set(find_pattern_occurrences(g2, t2)) == {
            letters("ad", "ae", "hn"),
            letters("dk", "ek", "hn"),
            letters("gh", "gn", "de"),
            letters("ho", "no", "de"),
        }


def test_criterion_09_gn_family(criterion):
    with criterion("09", "G_n valid for 13 <= n <= 40"):
        for n in range(13, 41):
            k, l = decompose_5k3l(n)
            g = construct_gn(n)
            assert (g.vertex_count, g.edge_count, g.face_count) == (4 * n - k + 1, 6 * n + l, 2 * n + k + l + 1)
            assert Counter(g.face_sizes) == Counter({5: 2 * n + k + l, n: 1})
            assert is_three_connected(g)
            assert pg_upper_bound(n) == 2 * n + k + l
        assert pg_upper_bound(13) == 29


def test_criterion_10_lemma_sweeps(criterion, pg_results, pool):
    # depends on the pool filled by criteria 1 to 6
    with criterion("10", "lemma sweeps over every generated triangulation"):
        assert len(pool) > 100
        counts, bad = sweep(pool)
        for (lemma, verdict), c in sorted(counts.items()):
            print(f"  lemma={lemma} verdict={verdict} count={c}")
        assert bad == []
        assert counts[("interior-count", Verdict.VIOLATED.value)] == 0
        for lemma in ("interior-count", "cycle-bounds", "no-chords"):
            assert counts[(lemma, Verdict.HOLDS.value)] > 0
        assert count_pentagon_fillings(6) == 1


def test_criterion_11_round_trips(criterion, roundtrip_corpus):
    with criterion("11", "byte-exact format round trips on >= 10^4 graphs"):
        graphs = roundtrip_corpus
        assert len(graphs) >= 10_000
        assert max(g.vertex_count for g in graphs) <= 14
        data = write_planar_code(graphs)
        back = parse_planar_code(data)
        assert write_planar_code(back) == data
        for g, h in zip(graphs, back):
            assert h.rotations == g.rotations
            text = write_ascii_adjacency(g)
            assert write_ascii_adjacency(parse_ascii_adjacency(text)) == text


def test_criterion_12_drawings(criterion, pg_results):
    with criterion("12", "crossing-free Tutte drawings"):
        dodeca = dual(icosahedron())
        assert find_crossings(dodeca, tutte_layout(dodeca, tol=TOL), TOL) == []
        drawn = 1
        for r in pg_results.values():
            for rec in r.classes:
                xy = tutte_layout(rec.graph, rec.outer_face, tol=TOL)
                assert find_crossings(rec.graph, xy, TOL) == []
                drawn += 1
        for n in range(13, 18):
            g = construct_gn(n)
            assert find_crossings(g, tutte_layout(g, tol=TOL), TOL) == []
            drawn += 1
        assert drawn == 1 + sum(CLASS_TABLE.values()) + 5


@pytest.mark.extended
def test_criterion_13_n13(criterion):
    from pentagulation.pg_search import compute_pg

    with criterion("13", "no pentagulation of a 13-gon with surplus <= 3"):
        res = compute_pg(13, 3)
        assert res.classes == [] and not res.exact
        assert res.lower_bound == 13 + 14
        assert str(res) == "Pg(13)>=27"
