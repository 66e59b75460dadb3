from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from iset.graph import (
    Graph, GraphError, ParseError, DuplicateEdgeWarning, brute_force_triangle_free, complete_graph,
    cycle_graph, disjoint_union, empty_graph, format_edge_list, from_edge_list, parse_edge_list,
    path_graph, petersen_graph, star_graph,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edge_list(n, chosen)


def test_from_edge_list_basic():
    g = from_edge_list(2, [(0, 1)])
    assert (g.n, g.e, g.t) == (2, 1, 1)
    c5 = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert (c5.e, c5.t) == (5, 2)
    assert from_edge_list(4, []).t == 0


def test_average_degree_is_exact_rational():
    g = from_edge_list(3, [(0, 1)])
    assert g.t == Fraction(2, 3)


def test_from_edge_list_deduplicates():
    g = from_edge_list(3, [(0, 1), (1, 0), (0, 1)])
    assert g.e == 1


@pytest.mark.parametrize("edges, fragment", [([(0, 5)], "(0, 5)"), ([(2, 2)], "(2, 2)")])
def test_from_edge_list_rejects(edges, fragment):
    with pytest.raises(GraphError, match=fragment.replace("(", r"\(").replace(")", r"\)")):
        from_edge_list(3, edges)


def test_triangle_free_fixtures():
    assert not complete_graph(3).is_triangle_free()
    assert cycle_graph(5).is_triangle_free()
    p = petersen_graph()
    assert p.is_triangle_free() and brute_force_triangle_free(p)


def test_induced():
    c5 = cycle_graph(5)
    h = c5.induced({0, 1})
    assert (h.n, h.e) == (2, 1)
    assert h.labels == (0, 1)
    h = c5.induced({0, 2})
    assert (h.n, h.e) == (2, 0)
    nested = c5.induced({1, 2, 3}).induced({0, 2})
    assert nested.labels == (1, 3)
    with pytest.raises(GraphError):
        c5.induced({7})


def test_induced_petersen_triples_triangle_free():
    p = petersen_graph()
    assert all(p.induced(s).is_triangle_free() for s in combinations(range(10), 3))


def test_survivor_set_examples():
    assert path_graph(3).survivor_set({1}) == frozenset()
    assert star_graph(3).survivor_set({1}) == {2, 3}
    assert cycle_graph(5).survivor_set({0}) == {2, 3}


def test_low_degree_set():
    c5 = cycle_graph(5)
    assert c5.low_degree_set(10 * c5.t) == set(range(5))
    s9 = star_graph(9)
    assert s9.t == Fraction(9, 5)
    assert s9.low_degree_set(10 * s9.t) == set(range(10))
    s99 = star_graph(99)
    assert s99.low_degree_set(10 * s99.t) == set(range(1, 100))


def test_connected_components():
    assert empty_graph(3).connected_components() == [{0}, {1}, {2}]
    assert cycle_graph(5).connected_components() == [set(range(5))]
    two = disjoint_union(complete_graph(3), complete_graph(3))
    assert two.connected_components() == [{0, 1, 2}, {3, 4, 5}]


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_survivor_set_properties(g, data):
    s = frozenset(data.draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set())
    m = g.survivor_set(s)
    assert not (m & s)
    assert all(g.adj(v).isdisjoint(s) for v in m)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=14))
def test_component_and_triangle_properties(g):
    comps = g.connected_components()
    assert sum(len(c) for c in comps) == g.n
    assert frozenset().union(*comps) == set(range(g.n))
    for a, b in combinations(comps, 2):
        assert all(g.adj(v).isdisjoint(b) for v in a)
    assert g.is_triangle_free() == brute_force_triangle_free(g)
    assert sum(g.degree(v) for v in g.vertices()) == 2 * g.e


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_induced_average_degree_bounded(g, data):
    s = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), min_size=1)) if g.n else set()
    if s:
        assert g.induced(s).t <= g.max_degree()


def test_edge_list_round_trip():
    p = petersen_graph()
    assert parse_edge_list(format_edge_list(p, comment="petersen")) == p


def test_parse_comments_and_duplicates():
    text = "# a comment\n3 3\n0 1\n# inner\n1 2\n2 1\n"
    with pytest.warns(DuplicateEdgeWarning):
        g = parse_edge_list(text)
    assert g.e == 2


@pytest.mark.parametrize("text", ["", "3 1\n1 1\n", "3 1\n0 9\n", "3 2\n0 1\n", "3 1\n0 x\n", "3\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


def test_graph_pickles():
    import pickle
    g = petersen_graph().induced({1, 2, 3, 7})
    h = pickle.loads(pickle.dumps(g))
    assert h == g and h.e == g.e and h.labels == g.labels
