import pytest
from hypothesis import given, strategies as st

from khspan import fixtures
from khspan.diagram import canonical_tait_graph, medial
from khspan.graph import parse_graph
from khspan.khovanov import bracket_state_sum
from khspan.polynomial import LaurentPoly
from khspan.trees import (ActivityWord, TreeError, activity_word, bracket_by_trees, cut, cyc,
                          enumerate_trees, fundamental_markers, grading_u, grading_v, jones,
                          mask_edges, matrix_tree_count, partial_smoothing, thistlethwaite_monomial,
                          tree_records)

from conftest import graph_from_seed

# Jones polynomials from standard knot tables, as {exponent: coefficient};
# a fixture may be either chirality, so the mirror t -> 1/t is also accepted.
TABLE_JONES = {
    "4_1": {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1},
    "5_1": {-7: -1, -6: 1, -5: -1, -4: 1, -2: 1},
    "5_2": {1: 1, 2: -1, 3: 2, 4: -1, 5: 1, 6: -1},
    "6_1": {-2: 1, -1: -1, 0: 2, 1: -2, 2: 1, 3: -1, 4: 1},
    "6_2": {-1: 1, 0: -1, 1: 2, 2: -2, 3: 2, 4: -2, 5: 1},
    "6_3": {-3: -1, -2: 2, -1: -2, 0: 3, 1: -2, 2: 2, 3: -1},
    "8_19": {3: 1, 5: 1, 8: -1},
    "9_42": {-3: 1, -2: -1, -1: 1, 0: -1, 1: 1, 2: -1, 3: 1},
    "10_124": {4: 1, 6: 1, 10: -1},
}


def test_figure8_worked_example(fig8_graph):
    recs = tree_records(fig8_graph)
    assert [str(r.word) for r in recs] == ["LLdd", "LdDd", "ℓDDd", "ℓLdD", "ℓℓDD"]
    assert [str(r.monomial) for r in recs] == ["A^-8", "-A^-4", "-A^4", "1", "A^8"]
    assert [r.smoothing for r in recs] == ["**BB", "*BAB", "*AAB", "**BA", "**AA"]
    assert [(r.u, r.v) for r in recs] == [(2, 2), (1, 2), (-1, 2), (0, 2), (-2, 2)]
    assert str(bracket_by_trees(fig8_graph)) == "A^-8 - A^-4 + 1 - A^4 + A^8"


def test_figure8_jones(fig8_graph):
    assert str(jones(medial(fig8_graph))) == "t^-2 - t^-1 + 1 - t + t^2"


@pytest.mark.parametrize("name", sorted(TABLE_JONES))
def test_jones_against_knot_tables(name):
    v = jones(fixtures.load(name))
    want = LaurentPoly(TABLE_JONES[name], "t")
    mirror = LaurentPoly({-e: c for e, c in TABLE_JONES[name].items()}, "t")
    assert v in (want, mirror)


def test_trefoil_rows_sum_to_bracket():
    d = fixtures.load("3_1")
    g = canonical_tait_graph(d)
    recs = tree_records(g)
    assert len(recs) == 3
    total = LaurentPoly.zero("A")
    for r in recs:
        total = total + r.monomial
    assert total == bracket_state_sum(d)


def test_single_edge_graphs():
    bridge = parse_graph("V 2\nE 1 0 1 +1\nR 0 1\nR 1 1\n")
    loop = parse_graph("V 1\nE 1 0 0 -1\nR 0 1 1\n")
    assert [str(activity_word(bridge, t)) for t in enumerate_trees(bridge)] == ["L"]
    assert [str(activity_word(loop, t)) for t in enumerate_trees(loop)] == ["ℓ̄"]
    assert str(thistlethwaite_monomial(ActivityWord.parse("L"))) == "-A^-3"


def test_activity_word_parsing():
    w = ActivityWord.parse("Ld'l D")
    assert str(w) == "Ld̄ℓD"
    assert w.ascii() == "Ld'lD"
    assert w.signs == (1, -1, 1, 1)
    assert w.tree_mask == 0b1001
    with pytest.raises(TreeError):
        ActivityWord.parse("Lx")
    with pytest.raises(TreeError):
        ActivityWord.parse("'L")


def test_smoothing_and_marker_tables():
    w = ActivityWord.parse("LDld L'D'l'd'")
    assert partial_smoothing(w) == "*A*B*B*A"
    assert fundamental_markers(w) == "BAABABBA"


def test_gradings():
    w = ActivityWord.parse("LLdd")
    assert (grading_u(w), grading_v(w)) == (2, 2)
    w = ActivityWord.parse("L'l'D'd'")
    assert (grading_u(w), grading_v(w)) == (0, 0)


@given(st.integers(0, 10 ** 6))
def test_tree_count_matches_matrix_tree_theorem(seed):
    g = graph_from_seed(seed, 10)
    trees = enumerate_trees(g)
    assert len(trees) == matrix_tree_count(g)
    assert trees == sorted(trees, key=mask_edges)
    assert all(len(mask_edges(t)) == g.n_vertices - 1 for t in trees)


@given(st.integers(0, 10 ** 6))
def test_cut_and_cycle_duality(seed):
    g = graph_from_seed(seed, 8)
    for t in enumerate_trees(g)[:4]:
        for e in range(g.n_edges):
            if t >> e & 1:
                assert e in cut(g, t, e)
                for f in cut(g, t, e) - {e}:
                    assert e in cyc(g, t, f)
            else:
                assert e in cyc(g, t, e)


@given(st.integers(0, 10 ** 6))
def test_thistlethwaite_expansion_equals_state_sum(seed):
    g = graph_from_seed(seed, 9)
    assert bracket_by_trees(g) == bracket_state_sum(medial(g))


@given(st.integers(0, 10 ** 6))
def test_word_recovers_tree(seed):
    g = graph_from_seed(seed, 8)
    for t in enumerate_trees(g):
        assert activity_word(g, t).tree_mask == t
