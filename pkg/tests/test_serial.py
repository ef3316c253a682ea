import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridbtw.errors import IndexOutOfRange, NormalizeTooSmall, PathCountOverflow
from gridbtw.graph import build_graph, edge_index, relabel
from gridbtw.oracle import all_pairs_distances, oracle_edge_betweenness
from gridbtw.serial import edge_betweenness_serial, node_betweenness_serial, single_source_state

from conftest import any_graphs, barbell_2_3, complete, connected_graphs, diamond, diamond_chain, k2, path3, star4


def test_state_path3():
    st_ = single_source_state(path3(), 0)
    assert st_.dist.tolist() == [0, 1, 2]
    assert st_.sp_num.tolist() == [1, 1, 1]
    assert st_.preds[2] == [1]
    assert st_.pd[1] == 1.0
    assert st_.order.tolist() == [2, 1, 0]


def test_state_diamond():
    st_ = single_source_state(diamond(), 0)
    assert st_.sp_num[3] == 2
    assert st_.pd[1] == 0.5 and st_.pd[2] == 0.5


def test_state_unreachable():
    st_ = single_source_state(build_graph([(0, 1)], 3), 0)
    assert st_.dist[2] == -1 and st_.sp_num[2] == 0 and st_.pd[2] == 0


def test_state_bad_source():
    with pytest.raises(IndexOutOfRange):
        single_source_state(path3(), 5)


def test_node_examples():
    assert node_betweenness_serial(path3(), "directed-sum").node_scores.tolist() == [0, 2, 0]
    assert node_betweenness_serial(star4(), "directed-sum").node_scores.tolist() == [6, 0, 0, 0]
    for n in range(1, 7):
        assert not node_betweenness_serial(complete(n), "directed-sum").node_scores.any()


def test_edge_examples():
    assert edge_betweenness_serial(k2(), "directed-sum").edge_scores.tolist() == [2.0]
    t = edge_betweenness_serial(path3(), "directed-sum")
    assert t.edge_scores.tolist() == [4.0, 4.0]
    assert t.node_scores.tolist() == [0, 2, 0]


def test_normalize():
    t = node_betweenness_serial(star4(), "directed-sum", normalize=True)
    assert t.node_scores[0] == 2.0 and t.normalized
    with pytest.raises(NormalizeTooSmall):
        node_betweenness_serial(k2(), normalize=True)


def test_deterministic():
    g = diamond_chain(6)
    a = edge_betweenness_serial(g)
    b = edge_betweenness_serial(g)
    assert np.array_equal(a.node_scores, b.node_scores) and np.array_equal(a.edge_scores, b.edge_scores)


def test_path_count_at_limit():
    st_ = single_source_state(diamond_chain(63), 0)
    assert int(st_.sp_num[-1]) == 2**63


@pytest.mark.parametrize("k", [64, 70])
def test_path_count_overflow(k):
    with pytest.raises(PathCountOverflow):
        node_betweenness_serial(diamond_chain(k))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_nodes=14))
def test_matches_oracle(g):
    for conv in ("pair-once", "directed-sum"):
        want = oracle_edge_betweenness(g, conv)
        got = edge_betweenness_serial(g, conv)
        np.testing.assert_allclose(got.node_scores, want.node_scores, rtol=0, atol=1e-9)
        np.testing.assert_allclose(got.edge_scores, want.edge_scores, rtol=0, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(any_graphs())
def test_path_length_identities(g):
    d = all_pairs_distances(g)
    connected = d > 0
    t = edge_betweenness_serial(g, "directed-sum")
    assert t.node_scores.sum() == pytest.approx((d[connected] - 1).sum(), abs=1e-9)
    assert t.edge_scores.sum() == pytest.approx(d[connected].sum(), abs=1e-9)
    half = edge_betweenness_serial(g, "pair-once")
    assert half.edge_scores.sum() == pytest.approx(d[connected].sum() / 2, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(any_graphs())
def test_convention_scaling(g):
    a = edge_betweenness_serial(g, "directed-sum")
    b = edge_betweenness_serial(g, "pair-once")
    assert np.array_equal(a.node_scores, 2 * b.node_scores)
    assert np.array_equal(a.edge_scores, 2 * b.edge_scores)


def test_bridge_law_barbell():
    g = barbell_2_3()
    assert edge_betweenness_serial(g, "pair-once").edge_scores[edge_index(g, 1, 2)] == 6.0


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_nodes=3, max_nodes=14, max_density=1), st.data())
def test_leaf_and_symmetry(g, data):
    t = node_betweenness_serial(g)
    deg = g.degree()
    assert np.all(t.node_scores[deg == 1] == 0)
    s = data.draw(st.integers(0, g.node_count - 1))
    u = data.draw(st.integers(0, g.node_count - 1))
    a, b = single_source_state(g, s), single_source_state(g, u)
    assert a.dist[u] == b.dist[s]
    assert a.sp_num[u] == b.sp_num[s]


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_nodes=14), st.randoms(use_true_random=False))
def test_permutation_equivariance(g, rnd):
    perm = list(range(g.node_count))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    a, b = edge_betweenness_serial(g), edge_betweenness_serial(h)
    np.testing.assert_allclose(b.node_scores[perm], a.node_scores, atol=1e-9)
    for i, (u, v) in enumerate(g.edges):
        assert b.edge_scores[edge_index(h, perm[u], perm[v])] == pytest.approx(a.edge_scores[i], abs=1e-9)
