import random

from hypothesis import given, strategies as st

from khspan import fixtures
from khspan.random_graphs import random_graphs, random_planar_graph
from khspan.verify import mutant_pairs


def test_fixture_inventory():
    names = fixtures.knot_names()
    assert names[0] == "unknot"
    assert {"3_1", "4_1", "9_42", fixtures.KT, fixtures.CONWAY} <= set(names)
    for name in (fixtures.KT, fixtures.CONWAY):
        d = fixtures.load(name)
        assert d.n_crossings == 11 and d.writhe == -1 and d.component_count == 1


def test_knots_are_knots():
    for name in fixtures.knot_names(10):
        assert fixtures.load(name).component_count == 1


def test_recorded_flip_only_on_kinoshita_terasaka():
    assert fixtures.recorded_flip(fixtures.CONWAY) is None
    assert fixtures.recorded_flip(fixtures.KT).to_json()["side"] == [6, 7, 8, 9, 10, 11]


@given(st.integers(0, 10 ** 6), st.integers(1, 12), st.booleans())
def test_random_graphs_are_connected_plane_graphs(seed, n, mixed):
    g = random_planar_graph(random.Random(seed), n, mixed)
    assert g.n_edges == n and g.is_connected() and g.euler_genus() == 0
    if not mixed:
        assert set(g.signs) == {1}


def test_random_graphs_are_reproducible():
    a = [g.emit() for g in random_graphs(5, 10, 8)]
    b = [g.emit() for g in random_graphs(5, 10, 8)]
    assert a == b


def test_at_least_three_mutant_pairs():
    pairs = mutant_pairs()
    assert len(pairs) >= 3
    for _, d1, d2 in pairs:
        assert d1.component_count == d2.component_count == 1
