import json
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given
import hypothesis.strategies as st

from distrel.errors import (
    ConstructionInfeasible,
    FormatError,
    ParameterOutOfRange,
    PreconditionError,
)
from distrel.graph import (
    SimpleGraph,
    TwoTerminalGraph,
    complete_ttg,
    construct_A,
    construct_G_counterexample,
    construct_H,
    count_p3,
    edge_connectivity,
    literal_counterexample_order,
    structural_predicates,
)
from distrel.census import st_path_masks
from distrel.ttgio import format_ttg, graph_from_json, graph_to_json, iter_ttg, parse_graph, parse_ttg

from strategies import ttgs


def test_A_small_cases():
    assert set(construct_A(4, 0).edges) == {(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)}
    tri = construct_A(3, 0)
    assert tri.m == 3 and set(tri.edges) == {(0, 1), (0, 2), (1, 2)}
    A = construct_A(6, 3)
    assert A.m == 12
    assert set(A.neighbors(2)) == {0, 1, 3, 4, 5}


@pytest.mark.parametrize("n, r", [(2, 0), (4, 2), (5, -1)])
def test_A_out_of_range(n, r):
    with pytest.raises(ParameterOutOfRange):
        construct_A(n, r)


@pytest.mark.parametrize("n", range(3, 10))
def test_A_shape(n):
    for r in range(n - 2):
        A = construct_A(n, r)
        assert A.m == 2 * n - 3 + r
        assert all(A.has_edge(0, v) and A.has_edge(1, v) for v in range(2, n))
        hat = A.hat()
        assert hat.m == r
        assert all(0 in e for e in hat.edges)


def test_H_cases():
    assert construct_H(6, 9).same_graph(construct_A(6, 0))
    H8 = construct_H(6, 8)
    assert H8.n == 6 and H8.m == 8 and H8.degree(5) == 0
    assert set(H8.edges) == set(construct_A(5, 1).edges)
    H5 = construct_H(6, 5)
    assert set(H5.edges) == set(construct_A(4, 0).edges) and H5.degrees[4:] == (0, 0)
    with pytest.raises(ParameterOutOfRange):
        construct_H(6, 10)


@pytest.mark.parametrize("n", range(5, 9))
def test_H_paths_have_length_at_most_3(n):
    for m in range(5, 2 * n - 2):
        H = construct_H(n, m)
        assert H.n == n and H.m == m
        assert st_path_masks(H, n - 1) == st_path_masks(H, 3)


def test_counterexample_construction():
    G = construct_G_counterexample(11, 20)
    assert G.n == 11 and G.m == 20
    assert set(G.edges) == set(construct_A(9, 5).edges)
    G = construct_G_counterexample(11, 24)
    assert set(G.edges) == set(construct_A(10, 7).edges) and G.degree(10) == 0
    with pytest.raises(ParameterOutOfRange):
        construct_G_counterexample(11, 19)


def test_literal_order_is_infeasible_in_window():
    for n in range(11, 16):
        for m in range(20, 3 * n - 8):
            with pytest.raises(ConstructionInfeasible):
                construct_G_counterexample(n, m, literal_counterexample_order(n))
            G = construct_G_counterexample(n, m)
            assert G.n == n and G.m == m


def test_structural_predicates():
    rep = structural_predicates(construct_A(4, 0))
    assert rep.terminals_true_twins and rep.terminals_universal
    assert not structural_predicates(construct_H(6, 5)).terminals_universal
    K6 = complete_ttg(6)
    rep = structural_predicates(K6)
    assert rep.terminals_universal
    assert K6.hat().m == 6 and K6.hat().n == 4


def test_p3_examples():
    assert count_p3(SimpleGraph(4, tuple((u, v) for u in range(4) for v in range(u + 1, 4)))) == 12
    assert count_p3(SimpleGraph(5, ())) == 0
    assert count_p3(SimpleGraph(3, ((0, 1), (1, 2)))) == 1


@given(ttgs(max_n=7))
def test_p3_matches_triples(G):
    brute = sum(1 for a, b, c in permutations(range(G.n), 3)
                if a < c and G.has_edge(a, b) and G.has_edge(b, c))
    assert count_p3(G) == brute


def test_edge_connectivity_examples():
    K4 = SimpleGraph(4, tuple((u, v) for u in range(4) for v in range(u + 1, 4)))
    assert edge_connectivity(K4) == 3
    assert edge_connectivity(SimpleGraph(3, ((0, 1), (1, 2)))) == 1
    two_triangles = SimpleGraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert edge_connectivity(two_triangles) == 0
    with pytest.raises(PreconditionError):
        edge_connectivity(SimpleGraph(1, ()))


@given(ttgs(max_n=8, max_m=28))
def test_edge_connectivity_matches_networkx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    lam = edge_connectivity(G)
    assert lam == nx.edge_connectivity(g)
    if nx.is_connected(g):
        assert lam <= min(G.degrees)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        TwoTerminalGraph(3, ((0, 0),))
    with pytest.raises(ValueError):
        TwoTerminalGraph(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        TwoTerminalGraph(3, ((0, 3),))


@given(ttgs(max_n=8, max_m=28))
def test_ttg_round_trip(G):
    text = format_ttg(G)
    again = parse_ttg(text)
    assert format_ttg(again) == text
    assert again.same_graph(G)
    assert graph_from_json(json.loads(json.dumps(graph_to_json(G)))).same_graph(G)
    assert parse_graph(json.dumps(graph_to_json(G))).same_graph(G)


@pytest.mark.parametrize("text, line", [
    ("graph 3 1\nterminals 0 1\n0 1\n", 1),
    ("ttg 3 1\nterminals 1 2\n0 1\n", 2),
    ("ttg 3 2\nterminals 0 1\n0 1\n", 4),
    ("ttg 3 2\nterminals 0 1\n0 2\n0 1\n", 4),
    ("ttg 3 2\nterminals 0 1\n0 1\n0 1\n", 4),
    ("ttg 3 1\nterminals 0 1\n0 5\n", 3),
    ("ttg 3 1\nterminals 0 1\n1 0\n", 3),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        parse_ttg(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_stream_of_graphs():
    graphs = [construct_A(4, 0), construct_H(6, 6), complete_ttg(3)]
    text = "\n".join(format_ttg(G) for G in graphs)
    back = list(iter_ttg(text))
    assert [format_ttg(G) for G in back] == [format_ttg(G) for G in graphs]
