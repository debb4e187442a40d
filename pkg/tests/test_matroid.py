from collections import Counter

import pytest
from hypothesis import given, strategies as st

from khspan import fixtures
from khspan.diagram import canonical_tait_graph, medial
from khspan.graph import parse_graph
from khspan.matroid import (FlipError, FlipMove, apply_flip, are_mutants, colored_matroid, compare_E2,
                            conjecture_probe, matroid_isomorphic, transport_order, two_separations)
from khspan.tree_complex import TreeData
from khspan.trees import activity_word, enumerate_trees

from conftest import graph_from_seed

SINGLE_EDGE = "V 2\nE 1 0 1 +1\nR 0 1\nR 1 1\n"
TRIANGLE = "V 3\nE 1 0 1 +1\nE 2 1 2 +1\nE 3 2 0 +1\nR 0 1 3\nR 1 2 1\nR 2 3 2\n"
PATH = "V 3\nE 1 0 1 +1\nE 2 1 2 -1\nR 0 1\nR 1 1 2\nR 2 2\n"


def test_small_matroids(fig8_graph):
    m = colored_matroid(fig8_graph)
    assert (m.size, len(m.bases), m.rank) == (4, 5, 2)
    assert m.colors == (1, 1, 1, 1)
    assert m.check_exchange()
    m = colored_matroid(parse_graph(SINGLE_EDGE))
    assert (m.size, len(m.bases)) == (1, 1)
    m = colored_matroid(parse_graph(TRIANGLE))
    assert (m.size, len(m.bases)) == (3, 3)


def test_matroid_isomorphism_basics(fig8_graph):
    m = colored_matroid(fig8_graph)
    perm = matroid_isomorphic(m, m)
    assert perm is not None and m.relabeled(perm) == m
    trefoil = colored_matroid(canonical_tait_graph(fixtures.load("3_1")))
    assert matroid_isomorphic(m, trefoil) is None
    assert matroid_isomorphic(trefoil, m) is None


def test_kinoshita_terasaka_flip_gives_conway():
    kt = canonical_tait_graph(fixtures.load(fixtures.KT))
    conway = canonical_tait_graph(fixtures.load(fixtures.CONWAY))
    move = fixtures.recorded_flip(fixtures.KT)
    assert move is not None and move.kind == "2-flip"
    flipped = apply_flip(kt, move)
    assert flipped.plane_isomorphism(conway) is not None
    assert kt.plane_isomorphism(conway) is None
    assert colored_matroid(flipped) == colored_matroid(kt)


def test_symmetric_flip_gives_isomorphic_graph(fig8_graph):
    moves = two_separations(fig8_graph)
    assert moves
    for mv in moves:
        assert fig8_graph.plane_isomorphism(apply_flip(fig8_graph, mv)) is not None


def test_one_flip():
    g = parse_graph(PATH)
    h = apply_flip(g, FlipMove("1-flip", 1, 0, frozenset({1})))
    assert h.n_vertices == 3 and h.endpoints(1)[0] == 0
    assert colored_matroid(h) == colored_matroid(g)


def test_flip_at_non_cut_vertex_rejected(fig8_graph):
    with pytest.raises(FlipError):
        apply_flip(fig8_graph, FlipMove("1-flip", 0, 2, frozenset({0})))
    with pytest.raises(FlipError):
        apply_flip(fig8_graph, FlipMove("2-flip", 0, 0, frozenset({1, 2})))
    with pytest.raises(FlipError):
        apply_flip(fig8_graph, FlipMove("twist", 0, 1, frozenset({1})))


@given(st.integers(0, 10 ** 6))
def test_flips_preserve_matroid_and_words(seed):
    g = graph_from_seed(seed, 9)
    m = colored_matroid(g)
    words = Counter(str(activity_word(g, t)) for t in enumerate_trees(g))
    for mv in two_separations(g)[:6]:
        h = apply_flip(g, mv)
        assert colored_matroid(h) == m
        assert Counter(str(activity_word(h, t)) for t in enumerate_trees(h)) == words


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_isomorphism_is_symmetric(s1, s2):
    m1, m2 = colored_matroid(graph_from_seed(s1, 6)), colored_matroid(graph_from_seed(s2, 6))
    assert (matroid_isomorphic(m1, m2) is None) == (matroid_isomorphic(m2, m1) is None)


def test_are_mutants_flagship():
    kt, conway = fixtures.load(fixtures.KT), fixtures.load(fixtures.CONWAY)
    rep = are_mutants(kt, conway)
    assert rep.mutants
    m1 = colored_matroid(canonical_tait_graph(kt))
    m2 = colored_matroid(canonical_tait_graph(conway))
    assert m1.relabeled(rep.witness) == m2
    moved = transport_order(conway, rep.witness)
    w1 = sorted(map(str, TreeData(kt).words))
    w2 = sorted(map(str, TreeData(moved).words))
    assert w1 == w2


def test_mutants_negative_control_and_self():
    fig8, trefoil = fixtures.load("4_1"), fixtures.load("3_1")
    assert are_mutants(fig8, fig8).mutants
    assert not are_mutants(fig8, trefoil).mutants
    assert compare_E2(fig8, fig8).equal
    cmp = compare_E2(fig8, trefoil)
    assert not cmp.equal and cmp.witness is None


def test_probe_against_itself_agrees():
    d = fixtures.load("8_20")
    rep = conjecture_probe(d, d)
    assert not rep.disagreements and not rep.unmatched
    assert rep.agreements == len(rep.details) > 0
    assert rep.homology_equal
    assert rep.to_json()["equal_up_to_generator_signs"]


def test_probe_needs_isomorphic_matroids():
    with pytest.raises(FlipError):
        conjecture_probe(fixtures.load("4_1"), fixtures.load("3_1"))


def test_probe_on_flipped_graph_reports_structure():
    g = canonical_tait_graph(fixtures.load("9_42"))
    moves = [mv for mv in two_separations(g) if g.plane_isomorphism(apply_flip(g, mv)) is None]
    assert moves
    d1, d2 = medial(g, (0, 0)), medial(apply_flip(g, moves[0]), (0, 0))
    rep = conjecture_probe(d1, d2).to_json()
    assert set(rep["by_kind"]) == {"direct", "higher"}
    assert rep["by_kind"]["direct"]["agree"] == rep["by_kind"]["direct"]["total"]
    assert rep["unmatched_words"] == []
