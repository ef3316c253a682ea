"""Reference serial Brandes: node and edge betweenness over every source."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NormalizeTooSmall, PathCountOverflow
from .graph import Graph, _check_node
from .scores import DEFAULT_CONVENTION, Convention, ScoreTable, apply_convention, normalize_scores


@dataclass
class SourceState:
    """Working set of one source after the forward and backward phases."""

    source: int
    dist: np.ndarray
    sp_num: np.ndarray
    preds: list[list[int]]
    order: np.ndarray
    pd: np.ndarray


def single_source_state(g: Graph, s: int) -> SourceState:
    s = _check_node(g, s)
    n = g.node_count
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.uint64)
    order = np.empty(n, dtype=np.int64)
    pred = np.empty(len(g.indices), dtype=np.int64)
    pred_edge = np.empty(len(g.indices), dtype=np.int64)
    pred_cnt = np.zeros(n, dtype=np.int64)
    reached = kernels.bfs_count(g.indptr, g.indices, g.adj_edge, s, dist, sigma, order, pred, pred_edge, pred_cnt)
    if reached < 0:
        raise PathCountOverflow(s)
    pd = np.zeros(n, dtype=np.float64)
    kernels.accumulate_dependencies(
        g.indptr, s, reached, sigma, order, pred, pred_edge, pred_cnt,
        pd, np.zeros(n), np.zeros(0), False,
    )
    preds = [pred[g.indptr[w] : g.indptr[w] + pred_cnt[w]].tolist() for w in range(n)]
    return SourceState(s, dist, sigma, preds, order[:reached][::-1].copy(), pd)


def _brandes_all(g: Graph, do_edges: bool):
    node_acc = np.zeros(g.node_count)
    edge_acc = np.zeros(g.edge_count if do_edges else 0)
    sources = np.arange(g.node_count, dtype=np.int64)
    bad = kernels.accumulate_sources(g.indptr, g.indices, g.adj_edge, sources, do_edges, node_acc, edge_acc)
    if bad >= 0:
        raise PathCountOverflow(int(bad))
    return node_acc, edge_acc


def node_betweenness_serial(
    g: Graph, convention: Convention = DEFAULT_CONVENTION, normalize: bool = False
) -> ScoreTable:
    convention = Convention(convention)
    if normalize and g.node_count < 3:
        raise NormalizeTooSmall(g.node_count)
    node_acc, _ = _brandes_all(g, False)
    table = ScoreTable(apply_convention(node_acc, convention), None, convention)
    return normalize_scores(table) if normalize else table


def edge_betweenness_serial(g: Graph, convention: Convention = DEFAULT_CONVENTION) -> ScoreTable:
    convention = Convention(convention)
    node_acc, edge_acc = _brandes_all(g, True)
    return ScoreTable(apply_convention(node_acc, convention), apply_convention(edge_acc, convention), convention)
