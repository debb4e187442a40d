import pytest
from hypothesis import given, strategies as st

from khspan import fixtures
from khspan.diagram import (DiagramError, canonical_tait_graph, checkerboard, from_braid, medial,
                            parse_pd, tait_graph, unknot)
from khspan.trees import jones

from conftest import graph_from_seed

TREFOIL_PD = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n"


def test_parse_line_and_bracket_forms_agree():
    a = parse_pd(TREFOIL_PD)
    b = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]")
    c = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    assert a.crossings == b.crossings == c.crossings
    assert a.basepoint == 1


def test_basepoint_and_outer_records():
    d = parse_pd(TREFOIL_PD + "P 3\nO 1 2\n")
    assert d.basepoint == 3 and d.explicit_basepoint
    assert d.outer == (0, 2)


def test_unknot_token():
    d = parse_pd("UNKNOT\n")
    assert d.n_crossings == 0 and d.arcs == (1,)
    assert jones(d).items() == [(0, 1)]


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("X 1 2 3\n", "4 labels"),
    ("X 1 1 2 3\n", "exactly twice"),
    ("Y 1 2 3 4\n", "unknown record"),
    ("X a b c d\n", "malformed"),
    (TREFOIL_PD + "UNKNOT\n", "UNKNOT"),
    (TREFOIL_PD + "P 9\n", "basepoint"),
])
def test_malformed_input_is_rejected(text, message):
    with pytest.raises(DiagramError, match=message):
        parse_pd(text)


def test_disconnected_diagram_rejected():
    two = TREFOIL_PD + "X 11 14 12 15\nX 13 16 14 11\nX 15 12 16 13\n"
    with pytest.raises(DiagramError, match="disconnected"):
        parse_pd(two)


def test_trefoil_chirality():
    left, right = fixtures.load("3_1"), fixtures.load("3_1_mirror")
    assert left.writhe == -3 and right.writhe == 3
    assert str(jones(left)) == "-t^-4 + t^-3 + t^-1"
    assert str(jones(right)) == "t + t^3 - t^4"


def test_braid_closure_matches_fixture():
    d = from_braid([1, 1, 1])
    assert d.writhe == 3
    assert jones(d) == jones(fixtures.load("3_1_mirror"))
    assert jones(from_braid([1, -2, 1, -2])) == jones(fixtures.load("4_1"))


def test_bad_braid_generator():
    with pytest.raises(DiagramError):
        from_braid([0])
    with pytest.raises(DiagramError):
        from_braid([])


def test_emit_round_trip():
    for name in ("3_1", "4_1", "8_20"):
        d = fixtures.load(name)
        e = parse_pd(d.emit())
        assert e.crossings == d.crossings and e.basepoint == d.basepoint


def test_reorder_keeps_invariants():
    d = fixtures.load("6_2")
    order = list(reversed(range(d.n_crossings)))
    e = d.reorder(order)
    assert e.crossings[0] == d.crossings[-1]
    assert e.writhe == d.writhe and jones(e) == jones(d)


def test_checkerboard_colorings_are_complementary():
    d = fixtures.load("5_2")
    c1, c2 = checkerboard(d)
    assert c1.shaded | c2.shaded == frozenset(range(d.n_crossings + 2))
    assert not c1.shaded & c2.shaded
    g1, g2 = tait_graph(d, c1), tait_graph(d, c2)
    # the two Tait graphs are planar duals with opposite signs
    assert g1.n_vertices + g2.n_vertices == d.n_crossings + 2
    assert g1.signs == tuple(-s for s in g2.signs)


def test_canonical_coloring_prefers_positive_edges():
    for name in fixtures.knot_names(10):
        g = canonical_tait_graph(fixtures.load(name))
        pos = sum(1 for s in g.signs if s > 0)
        assert 2 * pos >= g.n_edges


def test_figure8_tait_graph_is_all_positive(fig8_graph):
    assert fig8_graph.signs == (1, 1, 1, 1)
    assert canonical_tait_graph(medial(fig8_graph)).same_embedding(fig8_graph)


def test_unknot_diagram():
    u = unknot()
    assert u.writhe == 0 and u.component_count == 1


@given(st.integers(0, 10 ** 6))
def test_medial_then_tait_returns_the_graph(seed):
    g = graph_from_seed(seed, 9)
    d = medial(g)
    assert d.n_crossings == g.n_edges
    if 2 * sum(1 for s in g.signs if s > 0) > g.n_edges:
        assert canonical_tait_graph(d).same_embedding(g)
