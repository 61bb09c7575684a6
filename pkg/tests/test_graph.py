from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conngame.campaigns import is_outerplanar
from conngame.graph import (
    ConstructionOrdering,
    GraphError,
    ParseError,
    RootedTree,
    TreedepthDecomposition,
    build_graph,
    closure_of_rooted_tree,
    complete_graph,
    cycle_graph,
    fan_triangle_graph,
    fan_v,
    fan_w,
    ktree_ordering,
    parse_graph,
    path_graph,
    random_closure_subgraph,
    random_ktree,
    serialize_graph,
    spider_graph,
    spider_parts,
    treedepth_decomposition,
)

from conftest import brute_treedepth, connected_graphs

# --- build_graph --------------------------------------------------------------------


def test_single_edge():
    g = build_graph(2, [(0, 1)])
    assert g.edge_count == 1 and g.adjacency == ((1,), (0,))


def test_duplicate_edges_are_merged():
    assert build_graph(3, [(0, 1), (0, 1), (1, 0)]).edge_count == 1


def test_diamond_degrees():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert sorted((g.degree(v) for v in range(4)), reverse=True) == [3, 3, 2, 2]


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 0)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(GraphError):
        build_graph(3, edges)


@given(connected_graphs(max_n=9))
def test_adjacency_is_symmetric_and_sorted(g):
    for v in range(g.n):
        assert list(g.adjacency[v]) == sorted(set(g.adjacency[v]))
        assert v not in g.adjacency[v]
        for u in g.adjacency[v]:
            assert v in g.adjacency[u]


# --- closures and spiders ------------------------------------------------------------


def test_closure_of_path_is_triangle():
    assert closure_of_rooted_tree(RootedTree((None, 0, 1))) == complete_graph(3)


def test_closure_of_star_is_star():
    g = closure_of_rooted_tree(RootedTree((None, 0, 0, 0)))
    assert g.edges == ((0, 1), (0, 2), (0, 3))


def test_closure_of_spider_tree_is_diamond():
    # p1=0, p2=1, l1=2, l2=3
    g = closure_of_rooted_tree(RootedTree((None, 0, 1, 1)))
    assert set(g.edges) == {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)}


@given(st.integers(1, 12), st.integers(0, 10**6))
def test_closure_contains_parent_edges(n, seed):
    rng = random.Random(seed)
    parent = [None] + [rng.randrange(v) for v in range(1, n)]
    tree = RootedTree(tuple(parent))
    g = closure_of_rooted_tree(tree)
    for v, p in enumerate(parent):
        if p is not None:
            assert g.has_edge(v, p)
    assert tree.height == 1 + max(tree.level)


def test_rooted_tree_rejects_cycles_and_two_roots():
    with pytest.raises(GraphError):
        RootedTree((None, None))
    with pytest.raises(GraphError):
        RootedTree((None, 2, 1))


@pytest.mark.parametrize("k,n,m", [(3, 4, 5), (4, 7, 15), (5, 10, 30)])
def test_spider_sizes(k, n, m):
    g, dec = spider_graph(k)
    assert (g.n, g.edge_count) == (n, m)
    assert dec.height == k
    path, leaves = spider_parts(k)
    assert len(path) == k - 1 and len(leaves) == 2 * k - 4


def test_spider_rejects_small_k():
    with pytest.raises(GraphError):
        spider_graph(2)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_spider_treedepth_is_k(k):
    assert treedepth_decomposition(spider_graph(k)[0]).height == k


# --- treedepth -------------------------------------------------------------------------


def test_treedepth_small():
    assert treedepth_decomposition(complete_graph(2)).height == 2
    assert treedepth_decomposition(path_graph(4)).height == 3


@pytest.mark.parametrize("n", range(1, 16))
def test_treedepth_of_paths(n):
    assert treedepth_decomposition(path_graph(n)).height == math.ceil(math.log2(n + 1))


@settings(max_examples=60)
@given(connected_graphs(max_n=5))
def test_treedepth_matches_brute_force(g):
    dec = treedepth_decomposition(g)
    assert dec.height == brute_treedepth(g)
    assert dec.target == g


def test_treedepth_max_height_and_errors():
    assert treedepth_decomposition(path_graph(7), max_height=2) is None
    assert treedepth_decomposition(path_graph(7), max_height=3).height == 3
    with pytest.raises(GraphError):
        treedepth_decomposition(build_graph(2, []))


def test_random_closure_rejects_impossible_height():
    with pytest.raises(GraphError):
        random_closure_subgraph(3, 1, 0)


def test_decomposition_validates_edges():
    with pytest.raises(GraphError):
        TreedepthDecomposition(RootedTree((None, 0, 0)), build_graph(3, [(1, 2)]))


@given(st.integers(3, 10), st.integers(2, 4), st.integers(0, 10**6))
def test_random_closure_subgraph(n, h, seed):
    h = min(h, n)
    dec = random_closure_subgraph(n, h, seed)
    assert dec.target.is_connected()
    assert dec.height == h
    assert treedepth_decomposition(dec.target).height <= h


# --- k-trees -------------------------------------------------------------------------


def test_ktree_ordering_examples(diamond):
    assert ktree_ordering(diamond, 2) is not None
    assert ktree_ordering(cycle_graph(4), 2) is None
    assert ktree_ordering(complete_graph(4), 3) is not None


def test_ordering_validation_rejects_bad_orders(diamond):
    with pytest.raises(GraphError):
        ConstructionOrdering.from_order(diamond, [2, 3, 0, 1], 2)  # 2, 3 not adjacent
    with pytest.raises(GraphError):
        ConstructionOrdering.from_order(diamond, [0, 1, 2], 2)


def test_random_ktree_k3_base():
    g, order = random_ktree(2, 3, 123)
    assert g == complete_graph(3)


def test_random_ktree_edge_count():
    assert random_ktree(2, 10, 7)[0].edge_count == 17


@given(st.integers(1, 4), st.integers(0, 12), st.integers(0, 10**6))
def test_random_ktree_properties(k, extra, seed):
    n = k + extra
    g, order = random_ktree(k, n, seed)
    assert g.is_connected()
    assert g.edge_count == k * n - k * (k + 1) // 2
    assert ktree_ordering(g, k) is not None
    assert order.k == k
    assert random_ktree(k, n, seed)[0] == g


def test_random_ktree_rejects_small_n():
    with pytest.raises(GraphError):
        random_ktree(3, 2, 0)


# --- fan-triangle graphs -------------------------------------------------------------


def test_fan_48_size():
    g, _ = fan_triangle_graph(48)
    assert (g.n, g.edge_count) == (98, 193)


def test_fan_1_is_diamond(diamond):
    g, _ = fan_triangle_graph(1)
    assert g.edge_count == 5
    assert sorted(g.degree(v) for v in range(4)) == sorted(diamond.degree(v) for v in range(4))


@pytest.mark.parametrize("m", range(1, 13))
def test_fan_structure(m):
    g, order = fan_triangle_graph(m)
    assert (g.n, g.edge_count) == (2 * m + 2, 4 * m + 1)
    assert ktree_ordering(g, 2) is not None
    assert order.k == 2
    for i in range(m + 1):
        assert g.has_edge(0, fan_w(m, i))
    for i in range(1, m + 1):
        assert g.has_edge(fan_w(m, i - 1), fan_w(m, i))
        assert g.has_edge(fan_v(m, i), fan_w(m, i - 1)) and g.has_edge(fan_v(m, i), fan_w(m, i))


@pytest.mark.parametrize("m", range(1, 7))
def test_fan_is_outerplanar(m):
    assert is_outerplanar(fan_triangle_graph(m)[0])


def test_fan_rejects_m0():
    with pytest.raises(GraphError):
        fan_triangle_graph(0)


# --- parsing ---------------------------------------------------------------------------


def test_parse_k2():
    assert parse_graph("2 1\n0 1\n") == complete_graph(2)


def test_diamond_serialization(diamond):
    assert serialize_graph(diamond) == "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n"


@given(connected_graphs(max_n=10))
def test_round_trip(g):
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


def test_parse_accepts_comments_and_any_order():
    g = parse_graph("# header next\n3 2\n2 1\n# edge\n1 0\n")
    assert serialize_graph(g) == "3 2\n0 1\n1 2\n"


@pytest.mark.parametrize(
    "text,line",
    [
        ("2\n0 1\n", 1),
        ("x y\n", 1),
        ("2 1\n0 5\n", 2),
        ("2 2\n0 1\n1 0\n", 3),
        ("3 2\n0 1\n", 1),
        ("2 1\n0 0\n", 2),
        ("2 1\nc 0 1\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
