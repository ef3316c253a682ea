"""Brandes single-source kernels over CSR arrays.

These are the hot loops. They are compiled with numba (``nogil`` so worker
threads run truly in parallel) unless GRIDBTW_DISABLE_NUMBA is set, in which
case the identical code runs as Python.

Array conventions shared by all kernels:

* ``dist`` int64, -1 for unreached
* ``sigma`` uint64 shortest-path counts
* ``order`` int64, BFS visitation order; it doubles as the queue and,
  read backwards, as the stack of nodes in non-increasing distance
* ``pred`` / ``pred_edge`` int64 of length ``2m``; the predecessors of ``w``
  live in ``pred[indptr[w] : indptr[w] + pred_cnt[w]]`` (a node never has more
  predecessors than neighbors, so the CSR offsets double as slot offsets)
"""

import numpy as np

from ._jit import njit

SIGMA_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(nogil=True, cache=True)
def bfs_count(indptr, indices, adj_edge, s, dist, sigma, order, pred, pred_edge, pred_cnt):
    """Forward phase. Returns the number of reached nodes, or -1 on overflow.

    Scratch arrays must arrive reset (dist -1, sigma 0, pred_cnt 0).
    """
    dist[s] = 0
    sigma[s] = 1
    order[0] = s
    head = 0
    tail = 1
    while head < tail:
        v = order[head]
        head += 1
        dv = dist[v]
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if dist[w] < 0:
                order[tail] = w
                tail += 1
                dist[w] = dv + 1
            if dist[w] == dv + 1:
                if sigma[w] > SIGMA_MAX - sigma[v]:
                    return -1
                sigma[w] += sigma[v]
                slot = indptr[w] + pred_cnt[w]
                pred[slot] = v
                pred_edge[slot] = adj_edge[k]
                pred_cnt[w] += 1
    return tail


@njit(nogil=True, cache=True)
def accumulate_dependencies(
    indptr, s, reached, sigma, order, pred, pred_edge, pred_cnt, delta, node_acc, edge_acc, do_edges
):
    """Backward phase: pop the stack, propagate pair-dependencies, accumulate.

    ``delta`` must arrive zeroed on the reached nodes.
    """
    for i in range(reached - 1, -1, -1):
        w = order[i]
        sw = float(sigma[w])
        base = indptr[w]
        for k in range(pred_cnt[w]):
            v = pred[base + k]
            temp = (1.0 + delta[w]) * float(sigma[v]) / sw
            if do_edges:
                edge_acc[pred_edge[base + k]] += temp
            delta[v] += temp
        if w != s:
            node_acc[w] += delta[w]


@njit(nogil=True, cache=True)
def _reset(order, reached, dist, sigma, pred_cnt, delta):
    for i in range(reached):
        v = order[i]
        dist[v] = -1
        sigma[v] = 0
        pred_cnt[v] = 0
        delta[v] = 0.0


@njit(nogil=True, cache=True)
def accumulate_sources(indptr, indices, adj_edge, sources, do_edges, node_acc, edge_acc):
    """Add every source's contribution into ``node_acc``/``edge_acc``.

    Sources are processed in the given order. Returns the offending source on
    path-count overflow, else -1.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.uint64)
    order = np.empty(n, dtype=np.int64)
    pred = np.empty(indices.shape[0], dtype=np.int64)
    pred_edge = np.empty(indices.shape[0], dtype=np.int64)
    pred_cnt = np.zeros(n, dtype=np.int64)
    delta = np.zeros(n, dtype=np.float64)
    for i in range(sources.shape[0]):
        s = sources[i]
        reached = bfs_count(indptr, indices, adj_edge, s, dist, sigma, order, pred, pred_edge, pred_cnt)
        if reached < 0:
            return s
        accumulate_dependencies(
            indptr, s, reached, sigma, order, pred, pred_edge, pred_cnt, delta, node_acc, edge_acc, do_edges
        )
        _reset(order, reached, dist, sigma, pred_cnt, delta)
    return -1


@njit(nogil=True, cache=True)
def source_rows(indptr, indices, adj_edge, sources, do_edges, node_rows, edge_rows):
    """Like :func:`accumulate_sources` but keeps each source's contribution
    in its own row (``node_rows[i]`` belongs to ``sources[i]``).

    Rows must arrive zeroed.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.uint64)
    order = np.empty(n, dtype=np.int64)
    pred = np.empty(indices.shape[0], dtype=np.int64)
    pred_edge = np.empty(indices.shape[0], dtype=np.int64)
    pred_cnt = np.zeros(n, dtype=np.int64)
    delta = np.zeros(n, dtype=np.float64)
    for i in range(sources.shape[0]):
        s = sources[i]
        reached = bfs_count(indptr, indices, adj_edge, s, dist, sigma, order, pred, pred_edge, pred_cnt)
        if reached < 0:
            return s
        accumulate_dependencies(
            indptr, s, reached, sigma, order, pred, pred_edge, pred_cnt, delta, node_rows[i], edge_rows[i], do_edges
        )
        _reset(order, reached, dist, sigma, pred_cnt, delta)
    return -1
