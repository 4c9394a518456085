import math

import pytest
from hypothesis import given, strategies as st

from edgemaps.graphs import (
    all_trees,
    chromatic_number,
    complete,
    complete_bipartite,
    complete_minus_clique,
    complete_minus_factor,
    contains_copy,
    count_copies,
    count_labeled_copies,
    cycle,
    deck,
    edge_count,
    edge_id,
    edge_pair,
    edges_overlap,
    format_edge_list,
    format_graph6,
    from_edge_list,
    join,
    load_pattern,
    make_pattern,
    matching,
    max_clique_size,
    multi,
    parse_edge_list,
    parse_graph6,
    path,
    star,
    turan_graph,
    union,
)

# colex layout: edge (u, v) with u < v gets id C(v, 2) + u
COLEX_FIRST = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4)]


def test_edge_id_colex_order():
    for eid, (u, v) in enumerate(COLEX_FIRST):
        assert edge_id(u, v) == eid
        assert edge_pair(eid) == (u, v)


def test_edge_id_symmetric_and_rejects_loops():
    assert edge_id(3, 1) == edge_id(1, 3)
    with pytest.raises(ValueError):
        edge_id(2, 2)


@given(st.integers(min_value=0, max_value=edge_count(40) - 1))
def test_edge_id_round_trip(eid):
    u, v = edge_pair(eid)
    assert 0 <= u < v
    assert edge_id(u, v) == eid


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=0, max_value=200))
def test_edges_overlap_is_shared_endpoints(e1, e2):
    a, b = set(edge_pair(e1)), set(edge_pair(e2))
    assert edges_overlap(e1, e2) == len(a & b)


@pytest.mark.parametrize(
    "P,vertices,edges",
    [
        (complete(4), 4, 6),
        (star(3), 4, 3),
        (matching(2), 4, 2),
        (path(4), 4, 3),
        (cycle(5), 5, 5),
        (complete_bipartite(2, 3), 5, 6),
        (turan_graph(6, 3), 6, 12),
        (complete_minus_clique(4, 2), 4, 5),
        (complete_minus_factor(6), 6, 12),
    ],
)
def test_factory_sizes(P, vertices, edges):
    assert P.graph.n == vertices
    assert P.graph.m == edges


def test_union_multi_join():
    two = union(complete(2), complete(2))
    assert two.graph.n == 4 and two.graph.m == 2
    assert multi(3, complete(2)).graph.n == 6
    wheel_ish = join(complete(1), cycle(4))
    assert wheel_ish.graph.n == 5 and wheel_ish.graph.m == 8


@pytest.mark.parametrize(
    "spec,vertices,edges",
    [
        ("K4", 4, 6),
        ("K1,3", 4, 3),
        ("2K2", 4, 2),
        ("3K2", 6, 3),
        ("P4", 4, 3),
        ("C5", 5, 5),
        ("K3,3", 6, 9),
        ("K4-K2", 4, 5),
        ("K6-F", 6, 12),
        ("T6,3", 6, 12),
    ],
)
def test_make_pattern_specs(spec, vertices, edges):
    P = make_pattern(spec)
    assert P.graph.n == vertices
    assert P.graph.m == edges


def test_make_pattern_rejects_garbage():
    for bad in ("", "K", "QQQ", "K0"):
        with pytest.raises(ValueError):
            make_pattern(bad)


def test_pattern_names_round_trip():
    for spec in ("K4", "K1,3", "2K2", "P4", "C5", "K3,3"):
        P = make_pattern(spec)
        Q = make_pattern(str(P))
        assert Q.graph.edge_mask == P.graph.edge_mask


def test_edge_list_round_trip():
    P = make_pattern("K4-K2")
    Q = parse_edge_list(format_edge_list(P))
    assert Q.graph.n == P.graph.n and Q.graph.edge_mask == P.graph.edge_mask


def test_graph6_round_trip():
    for spec in ("K4", "C5", "2K2", "K3,3", "K6-F"):
        P = make_pattern(spec)
        Q = parse_graph6(format_graph6(P))
        assert Q.graph.n == P.graph.n and Q.graph.edge_mask == P.graph.edge_mask


def test_graph6_known_encoding():
    # K4 on 4 vertices, all six edges
    assert parse_graph6("C~").graph.m == 6
    assert format_graph6(complete(4)) == "C~"


def test_load_pattern_dispatches_on_shape():
    el = load_pattern("4 3\n0 1\n1 2\n2 3\n")
    assert el.graph.m == 3 and el.graph.n == 4
    g6 = load_pattern("C~")
    assert g6.graph.m == 6


def test_from_edge_list_validates():
    with pytest.raises(ValueError):
        from_edge_list(3, [(0, 3)])
    P = from_edge_list(4, [(0, 1), (2, 3)])
    assert P.graph.m == 2


def test_copy_counts_in_complete_host():
    K5 = complete(5).graph
    assert count_copies(complete(3), K5) == math.comb(5, 3)
    assert count_copies(complete(2), K5) == 10
    # each triangle admits |Aut(K3)| = 6 labelings
    assert count_labeled_copies(complete(3), K5) == 6 * math.comb(5, 3)
    assert count_copies(matching(2), K5) == 15
    assert contains_copy(cycle(5), K5)
    assert not contains_copy(complete(4), cycle(5).graph)


def test_deck_sizes():
    cards = deck(make_pattern("P4"))
    assert len(cards) == 4
    assert all(c.graph.n == 3 for c in cards)


def test_clique_and_chromatic():
    assert max_clique_size(complete(5).graph) == 5
    assert max_clique_size(cycle(5).graph) == 2
    assert chromatic_number(cycle(5).graph) == 3
    assert chromatic_number(complete_bipartite(3, 3).graph) == 2
    assert chromatic_number(complete(4).graph) == 4


@pytest.mark.parametrize("k,count", [(2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11)])
def test_tree_counts(k, count):
    trees = all_trees(k)
    assert len(trees) == count
    assert all(t.graph.n == k and t.graph.m == k - 1 for t in trees)


def test_turan_graph_rejects_bad_parts():
    with pytest.raises(ValueError):
        turan_graph(4, 0)
    with pytest.raises(ValueError):
        turan_graph(2, 3)
