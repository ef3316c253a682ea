import numpy as np
import pytest
from hypothesis import given, settings

from gridbtw.errors import TooLarge, Unreachable
from gridbtw.graph import build_graph, edge_index
from gridbtw.oracle import (
    all_pairs_distances,
    enumerate_shortest_paths,
    oracle_edge_betweenness,
    oracle_node_betweenness,
)

from conftest import barbell_2_3, complete, connected_graphs, diamond, k2, path3


def test_diamond_paths():
    ps = enumerate_shortest_paths(diamond(), 0, 3)
    assert ps.paths == [(0, 1, 3), (0, 2, 3)]
    assert ps.length == 2


def test_path3_paths():
    assert enumerate_shortest_paths(path3(), 0, 2).paths == [(0, 1, 2)]


def test_same_node_is_zero_length_path():
    ps = enumerate_shortest_paths(path3(), 1, 1)
    assert ps.paths == [(1,)] and ps.length == 0


def test_unreachable():
    g = build_graph([(0, 1)], 3)
    with pytest.raises(Unreachable):
        enumerate_shortest_paths(g, 0, 2)


def test_too_large():
    # grid of 4 parallel 2-hop routes, squared: 16 paths between the ends
    edges = [(0, i) for i in range(1, 5)] + [(i, 5) for i in range(1, 5)]
    edges += [(5, i) for i in range(6, 10)] + [(i, 10) for i in range(6, 10)]
    g = build_graph(edges, 11)
    assert len(enumerate_shortest_paths(g, 0, 10).paths) == 16
    with pytest.raises(TooLarge):
        enumerate_shortest_paths(g, 0, 10, limit=10)


def test_node_examples():
    assert oracle_node_betweenness(path3(), "pair-once").node_scores.tolist() == [0, 1, 0]
    assert oracle_node_betweenness(diamond(), "pair-once").node_scores.tolist() == [0.5] * 4
    for conv in ("pair-once", "directed-sum"):
        assert not oracle_node_betweenness(complete(4), conv).node_scores.any()


def test_edge_examples():
    assert oracle_edge_betweenness(k2(), "pair-once").edge_scores.tolist() == [1.0]
    assert oracle_edge_betweenness(path3(), "pair-once").edge_scores.tolist() == [2.0, 2.0]
    g = barbell_2_3()
    assert oracle_edge_betweenness(g, "pair-once").edge_scores[edge_index(g, 1, 2)] == 6.0


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_nodes=10))
def test_self_consistency(g):
    d = all_pairs_distances(g)
    for s in range(g.node_count):
        for t in range(s + 1, g.node_count):
            ps = enumerate_shortest_paths(g, s, t)
            assert len(set(ps.paths)) == len(ps.paths)
            interior = np.zeros(g.node_count)
            on_edge = np.zeros(g.edge_count)
            for p in ps.paths:
                assert p[0] == s and p[-1] == t and len(p) - 1 == d[s, t]
                assert len(set(p)) == len(p)
                for v in p[1:-1]:
                    interior[v] += 1
                for a, b in zip(p, p[1:]):
                    on_edge[edge_index(g, a, b)] += 1
            assert interior.sum() / len(ps.paths) == pytest.approx(d[s, t] - 1)
            assert on_edge.sum() / len(ps.paths) == pytest.approx(d[s, t])
