"""Level-synchronous single-source betweenness.

Each source is processed as a sequence of supersteps over explicit frontiers,
the way a vertex-centric graph engine runs it: a forward sweep grows the
frontiers one level per step (distances first, then path counts over the
edges that enter the new level), and a backward sweep walks the levels from
the deepest one back to the source, pushing pair-dependencies across the
edges between consecutive levels.

All per-level work is vectorized. Accumulation within a level is performed in
a canonical (target, origin) order, so the result does not depend on the
order in which frontier members are visited.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import PathCountOverflow, StateMismatch
from .graph import Graph, _check_node

log = logging.getLogger(__name__)

# above this a float64 partial sum can no longer certify a uint64 total
_EXACT_CHECK = float(2**62)


@dataclass
class LevelState:
    source: int
    frontiers: list[np.ndarray]
    curr_dist: int
    dist: np.ndarray
    sp_num: np.ndarray
    pd: Optional[np.ndarray] = None
    node_count: int = 0
    edge_count: int = 0


@dataclass
class SourceContribution:
    source: int
    node_add: np.ndarray
    edge_add: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _expand(g: Graph, nodes: np.ndarray):
    """All adjacency slots of ``nodes``: (origin node, neighbor, edge id)."""
    starts = g.indptr[nodes]
    counts = g.indptr[nodes + 1] - starts
    total = int(counts.sum())
    if total == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    origin = np.repeat(nodes, counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    slots = np.repeat(starts, counts) + offsets
    return origin, g.indices[slots], g.adj_edge[slots]


def _visit_order(items: np.ndarray, rng) -> np.ndarray:
    return items if rng is None else rng.permutation(items)


def _add_counts(sp_num: np.ndarray, targets: np.ndarray, values: np.ndarray, source: int) -> None:
    """sp_num[targets] += values with exact uint64 overflow detection."""
    order = np.lexsort((values, targets))
    targets, values = targets[order], values[order]
    uniq, starts = np.unique(targets, return_index=True)
    sums = np.add.reduceat(values, starts)
    approx = np.add.reduceat(values.astype(np.float64), starts)
    for i in np.flatnonzero(approx > _EXACT_CHECK):
        stop = starts[i + 1] if i + 1 < len(starts) else len(values)
        exact = sum(int(x) for x in values[starts[i] : stop])
        if exact > 0xFFFFFFFFFFFFFFFF:
            raise PathCountOverflow(source)
    sp_num[uniq] = sums


def forward_sweep(g: Graph, s: int, rng: Optional[np.random.Generator] = None) -> LevelState:
    """Grow BFS frontiers from ``s``, assigning distances and path counts.

    ``rng`` shuffles the visiting order inside each frontier; results are
    unaffected, which is what the order-independence tests check.
    """
    s = _check_node(g, s)
    n = g.node_count
    dist = np.full(n, -1, dtype=np.int64)
    sp_num = np.zeros(n, dtype=np.uint64)
    dist[s] = 0
    sp_num[s] = 1
    frontiers = [np.array([s], dtype=np.int64)]
    level = 0
    while True:
        origin, target, _ = _expand(g, _visit_order(frontiers[-1], rng))
        # distances for the whole next level first
        fresh = np.unique(target[dist[target] < 0])
        if len(fresh) == 0:
            break
        dist[fresh] = level + 1
        # then path counts over every edge entering that level
        down = dist[target] == level + 1
        _add_counts(sp_num, target[down], sp_num[origin[down]], s)
        frontiers.append(fresh)
        level += 1
        log.debug("forward superstep source=%d level=%d frontier=%d", s, level, len(fresh))
    return LevelState(s, frontiers, level, dist, sp_num, None, n, g.edge_count)


def backward_sweep(
    g: Graph,
    state: LevelState,
    accumulate_edges: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> SourceContribution:
    """Propagate pair-dependencies from the deepest frontier to the source.

    Fills ``state.pd`` and returns the source's node (and optionally edge)
    contributions.
    """
    n = g.node_count
    if len(state.dist) != n or state.node_count != n or state.edge_count != g.edge_count:
        raise StateMismatch(
            f"state built for {state.node_count} nodes/{state.edge_count} edges, "
            f"graph has {n}/{g.edge_count}"
        )
    s = state.source
    dist = state.dist
    sp = state.sp_num.astype(np.float64)
    pd = np.zeros(n, dtype=np.float64)
    node_add = np.zeros(n, dtype=np.float64)
    edge_add = np.zeros(g.edge_count if accumulate_edges else 0, dtype=np.float64)

    for level in range(state.curr_dist, 0, -1):
        deeper, upper, eid = _expand(g, _visit_order(state.frontiers[level], rng))
        keep = dist[upper] == level - 1
        t, v, eid = deeper[keep], upper[keep], eid[keep]
        canon = np.lexsort((t, v))
        t, v, eid = t[canon], v[canon], eid[canon]
        share = sp[v] / sp[t] * (1.0 + pd[t])
        np.add.at(pd, v, share)
        if accumulate_edges:
            edge_add[eid] = share
        upper_level = state.frontiers[level - 1]
        settled = upper_level[upper_level != s]
        node_add[settled] = pd[settled]
        log.debug("backward superstep source=%d level=%d edges=%d", s, level, len(t))

    state.pd = pd
    return SourceContribution(s, node_add, edge_add)


def superstep_contribution(g: Graph, s: int, accumulate_edges: bool = False) -> SourceContribution:
    state = forward_sweep(g, s)
    return backward_sweep(g, state, accumulate_edges)
