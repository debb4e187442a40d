import pytest
from hypothesis import given, strategies as st

from khspan import fixtures
from khspan.diagram import medial, unknot
from khspan.graph import parse_graph
from khspan.khovanov import build_complex, markers_to_mask
from khspan.trees import ActivityWord, uv_distribution
from khspan.tree_complex import (TreeData, TreeGen, classify_direct, collapse_to_tree_complex,
                                 e1_page, e2_integral, exchange_structure, filtration, ladders,
                                 rational_page, spectral_page, tree_poset)

from conftest import graph_from_seed

BRIDGE_NEG = "V 2\nE 1 0 1 -1\nR 0 1\nR 1 1\n"


@pytest.fixture(scope="module")
def fig8(fig8_graph):
    return TreeData(medial(fig8_graph), graph=fig8_graph)


def _direct_pairs(td):
    return [(a, b) for a in range(len(td)) for b in range(len(td))
            if classify_direct(td.words[a], td.words[b])]


# -- fundamental cycles -----------------------------------------------------

def test_round_unknot_cycle_is_plus():
    td = TreeData(unknot())
    assert len(td) == 1 and str(td.words[0]) == ""
    assert td.cycles[0] == {(0, 1): 1}


def test_one_positive_twist_two_terms():
    g = parse_graph(BRIDGE_NEG)
    td = TreeData(medial(g), graph=g)
    assert td.markers == ["A"]
    assert td.fundamental_cycle(0, 1) == {(0, 3): 1}
    # a minus basepoint loop expands into (-, +) - (+, -)
    assert td.fundamental_cycle(0, -1) == {(0, 2): 1, (0, 1): -1}


def test_figure8_cycle_markers(fig8):
    assert fig8.smoothings[0] == "**BB"
    assert fig8.markers[0] == "BBBB"
    assert {m for m, _ in fig8.cycles[0]} == {markers_to_mask("BBBB")}


@given(st.integers(0, 10 ** 6))
def test_cycles_live_on_one_state_and_are_cycles(seed):
    g = graph_from_seed(seed, 7)
    td = TreeData(medial(g), graph=g)
    for t in range(len(td)):
        z = td.cycles[t]
        assert {m for m, _ in z} == {markers_to_mask(td.markers[t])}
        # boundary stays outside the twisted unknot of t
        assert all(td.state_tree[m] != t for m, _ in td.space.differential_chain(z))


@given(st.integers(0, 10 ** 6))
def test_untwisting_order_does_not_matter(seed):
    g = graph_from_seed(seed, 7)
    td = TreeData(medial(g), graph=g)
    for t in range(len(td)):
        for variant in (1, -1):
            assert td.fundamental_cycle(t, variant, "bfs") == td.fundamental_cycle(t, variant, "dfs")


# -- direct incidence -------------------------------------------------------

def test_classify_direct_examples():
    P = ActivityWord.parse
    assert classify_direct(P("Ld'"), P("dD'"))
    assert classify_direct(P("d'D"), P("L'd"))
    assert classify_direct(P("l'D"), P("D'd"))
    assert classify_direct(P("Dd'"), P("lD'"))
    assert not classify_direct(P("Ld'"), P("Ld'"))
    assert not classify_direct(P("Ld'D"), P("dD'd"))
    with pytest.raises(ValueError):
        classify_direct(P("L"), P("Ld"))


def test_direct_incidence_trivial_cases(fig8):
    assert all(fig8.direct_incidence(t, t) == 0 for t in range(len(fig8)))
    # all figure-8 trees share v = 2, so no pair has bidegree difference (-1, -1)
    assert all(fig8.direct_incidence(a, b) == 0 for a in range(5) for b in range(5))


@given(st.integers(0, 10 ** 6))
def test_direct_incidence_matches_word_patterns(seed):
    g = graph_from_seed(seed, 6)
    td = TreeData(medial(g), graph=g)
    for a in range(len(td)):
        for b in range(len(td)):
            val = td.direct_incidence(a, b)
            assert bool(val) == classify_direct(td.words[a], td.words[b])
            assert val in (-1, 0, 1)
            if val:
                assert td.uv(b) == (td.uv(a)[0] - 1, td.uv(a)[1] - 1)
                assert exchange_structure(g, td.trees[a], td.trees[b]) is not None


# -- poset and filtration -----------------------------------------------------

def test_figure8_poset(fig8):
    assert sorted([t + 1 for t in c] for c in fig8.poset.chains()) == [[5, 3, 2, 1], [5, 4, 1]]
    assert fig8.poset.level == (4, 3, 2, 2, 1)
    assert fig8.poset.maximal() == [4] and fig8.poset.minimal() == [0]


def test_figure8_filtration(fig8):
    f = filtration(fig8)
    assert {p: sorted(t + 1 for t in ts) for p, ts in f.items()} == {
        1: [1, 2, 3, 4, 5], 2: [1, 2, 3, 4], 3: [1, 2], 4: [1]}


def test_single_tree_poset():
    p = tree_poset(["*"])
    assert p.level == (1,) and p.maximal() == p.minimal() == [0]


@given(st.integers(0, 10 ** 6))
def test_poset_has_unique_extremes_and_monotone_levels(seed):
    g = graph_from_seed(seed, 9)
    td = TreeData(medial(g), graph=g)
    p = td.poset
    assert len(p.maximal()) == 1 and len(p.minimal()) == 1
    for a in range(p.size):
        for b in p.greater[a]:
            assert p.level[a] < p.level[b]
            assert a not in p.greater[b]


# -- collapse -----------------------------------------------------------------

@given(st.integers(0, 10 ** 6), st.booleans())
def test_collapse_preserves_homology(seed, reduced):
    g = graph_from_seed(seed, 7)
    d = medial(g)
    td = TreeData(d, graph=g)
    tc = collapse_to_tree_complex(d, reduced, td)
    tc.complex.check()
    assert tc.homology() == build_complex(d, reduced).homology()
    assert len(tc.generators()) == len(td) * (1 if reduced else 2)


@pytest.mark.parametrize("name", ["8_19", "8_20", "10_132"])
def test_collapse_keeps_direct_incidences(name):
    d = fixtures.load(name)
    td = TreeData(d)
    tc = collapse_to_tree_complex(d, True, td)
    pairs = _direct_pairs(td)
    assert pairs
    for a, b in pairs:
        assert tc.incidence(TreeGen(a), TreeGen(b)) == td.direct_incidence(a, b)


def test_collapsed_differential_has_bidegree_minus_one():
    d = fixtures.load("8_20")
    tc = collapse_to_tree_complex(d, False, TreeData(d))
    for a, b, _ in tc.entries():
        (u1, v1), (u2, v2) = tc.uv(a), tc.uv(b)
        assert (u2, v2) == (u1 - 1, v1 - 1)


def test_unreduced_generators_are_shifted():
    d = fixtures.load("3_1")
    td = TreeData(d)
    tc = collapse_to_tree_complex(d, False, td)
    for t in range(len(td)):
        u, v = td.uv(t)
        assert tc.uv(TreeGen(t, -1)) == (u + 2, v + 1)


def test_pivot_order_does_not_change_entries():
    d = fixtures.load("8_20")
    td = TreeData(d)
    forward = collapse_to_tree_complex(d, True, td).entries()
    backward = collapse_to_tree_complex(d, True, td, reverse_pivots=True).entries()
    assert forward == backward


# -- spectral sequence ------------------------------------------------------------

def test_e1_counts_trees(fig8):
    page = e1_page(fig8)
    by_uv = {}
    for (p, i, j), r in page.ranks.items():
        key = fig8.uv_of(i, j)
        by_uv[key] = by_uv.get(key, 0) + r
    assert by_uv == dict(uv_distribution(fig8.words))


def test_figure8_e2_on_one_diagonal():
    d = fixtures.load("4_1")
    page = spectral_page(d, 2)
    assert sum(page.ranks.values()) == 5
    assert len({j - 2 * i for (_, i, j) in page.ranks}) == 1


@pytest.mark.parametrize("name", ["6_2", "8_19", "8_20", "9_42"])
def test_integral_e2_matches_rational_page(name):
    d = fixtures.load(name)
    td = TreeData(d)
    tc = collapse_to_tree_complex(d, True, td)
    integral = {k: v for k, v in e2_integral(td).ranks.items() if v}
    assert integral == rational_page(tc, 2).ranks


def test_pages_stabilize_at_homology():
    d = fixtures.load("8_19")
    td = TreeData(d)
    page = spectral_page(d, 20, trees=td)
    assert page.stabilized
    assert page.total_by_degree() == build_complex(d, True).homology().ranks()
    with pytest.raises(ValueError):
        spectral_page(d, -1, trees=td)


# -- ladders ------------------------------------------------------------------------

def test_ladder_of_a_direct_pair():
    d = fixtures.load("8_21")
    td = TreeData(d)
    a, b = _direct_pairs(td)[0]
    found = ladders(td, a, b, kmax=1)
    assert len(found) == 1
    assert found[0].trees == (a, b) and found[0].contribution == td.direct_incidence(a, b)


def test_ladders_to_self_are_empty():
    td = TreeData(fixtures.load("8_21"))
    assert ladders(td, 0, 0, kmax=3) == []
    with pytest.raises(ValueError):
        ladders(td, 0, 1, kmax=0)


def test_two_incidence_ladder_matches_collapse():
    d = fixtures.load("8_21")
    td = TreeData(d)
    tc = collapse_to_tree_complex(d, True, td)
    found = ladders(td, 0, 8, kmax=2)
    assert td.direct_incidence(0, 8) == 0
    assert [len(x.trees) for x in found] == [3]
    assert sum(x.contribution for x in found) == tc.incidence(TreeGen(0), TreeGen(8)) == 1
    js = found[0].to_json(td)
    assert js["trees"][0] == 1 and js["trees"][-1] == 9


def test_tree_data_rejects_wrong_graph(fig8_graph):
    with pytest.raises(Exception):
        TreeData(fixtures.load("3_1"), graph=fig8_graph)
