import pytest
from hypothesis import given, strategies as st

from khspan.graph import GraphFormatError, looks_like_graph, parse_graph

from conftest import graph_from_seed


def test_figure8_graph_structure(fig8_graph):
    g = fig8_graph
    assert (g.n_vertices, g.n_edges) == (3, 4)
    assert g.euler_genus() == 0
    assert len(g.faces) == 3


def test_emit_parse_round_trip(fig8_graph):
    h = parse_graph(fig8_graph.emit())
    assert h.same_embedding(fig8_graph)


def test_looks_like_graph(fig8_graph):
    assert looks_like_graph(fig8_graph.emit())
    assert not looks_like_graph("X 1 4 2 5\n")


@pytest.mark.parametrize("text", [
    "V 2\nE 1 0 5 +1\nR 0 1\nR 1 1\n",          # vertex out of range
    "V 2\nE 1 0 1 +2\nR 0 1\nR 1 1\n",          # bad sign
    "V 2\nE 1 0 1 +1\nR 0 1\n",                 # missing rotation
    "V 1\nE 1 0 0 +1\nE 2 0 0 +1\nR 0 1 2 1 2\n",  # interleaved loops: torus
])
def test_bad_graphs_rejected(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


@given(st.integers(0, 10 ** 6))
def test_plane_isomorphism_finds_relabelings(seed):
    g = graph_from_seed(seed, 9)
    order = list(range(g.n_edges))[::-1]
    h = g.relabel_edges(order)
    m = g.plane_isomorphism(h)
    assert m is not None
    assert all(g.signs[e] == h.signs[m[e]] for e in range(g.n_edges))


def test_sign_change_breaks_isomorphism(fig8_graph):
    text = fig8_graph.emit().replace("E 2 1 2 +1", "E 2 1 2 -1")
    flipped = parse_graph(text)
    assert fig8_graph.plane_isomorphism(flipped) is None
