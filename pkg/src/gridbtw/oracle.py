"""Brute-force betweenness by explicit shortest-path enumeration.

Ground truth for the test-suite. It shares nothing with the kernels beyond
the graph container: distances come from a plain BFS and path counts from
literally listing every shortest path, with no sigma/delta recursion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import TooLarge, Unreachable
from .graph import Graph, _check_node, edge_index, neighbors
from .scores import DEFAULT_CONVENTION, Convention, ScoreTable

MAX_PATHS = 10**6


@dataclass(frozen=True)
class PathSet:
    s: int
    t: int
    paths: list[tuple[int, ...]]
    length: int


def _bfs_distances(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.node_count
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in neighbors(g, v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _paths_to(g: Graph, s: int, t: int, dist: list[int], limit: int) -> list[tuple[int, ...]]:
    # walk back from t one level at a time; every such chain ends at s
    found = []
    stack = [(t, (t,))]
    while stack:
        node, suffix = stack.pop()
        if node == s:
            found.append(suffix)
            if len(found) > limit:
                raise TooLarge(f"more than {limit} shortest paths between {s} and {t}")
            continue
        for u in neighbors(g, node):
            if dist[u] == dist[node] - 1:
                stack.append((u, (u,) + suffix))
    return sorted(found)


def enumerate_shortest_paths(g: Graph, s: int, t: int, limit: int = MAX_PATHS) -> PathSet:
    s, t = _check_node(g, s), _check_node(g, t)
    dist = _bfs_distances(g, s)
    if dist[t] < 0:
        raise Unreachable(s, t)
    return PathSet(s, t, _paths_to(g, s, t, dist, limit), dist[t])


def _pair_path_sets(g: Graph, limit: int):
    for s in range(g.node_count):
        dist = _bfs_distances(g, s)
        for t in range(s + 1, g.node_count):
            if dist[t] > 0:
                yield _paths_to(g, s, t, dist, limit)


def oracle_node_betweenness(g: Graph, convention: Convention = DEFAULT_CONVENTION, limit: int = MAX_PATHS) -> ScoreTable:
    scores = np.zeros(g.node_count)
    for paths in _pair_path_sets(g, limit):
        total = len(paths)
        through = np.zeros(g.node_count, dtype=np.int64)
        for p in paths:
            for v in p[1:-1]:
                through[v] += 1
        scores += through / total
    if Convention(convention) is Convention.DIRECTED_SUM:
        scores *= 2
    return ScoreTable(scores, None, Convention(convention))


def oracle_edge_betweenness(g: Graph, convention: Convention = DEFAULT_CONVENTION, limit: int = MAX_PATHS) -> ScoreTable:
    scores = np.zeros(g.edge_count)
    for paths in _pair_path_sets(g, limit):
        total = len(paths)
        through = np.zeros(g.edge_count, dtype=np.int64)
        for p in paths:
            for a, b in zip(p, p[1:]):
                through[edge_index(g, a, b)] += 1
        scores += through / total
    if Convention(convention) is Convention.DIRECTED_SUM:
        scores *= 2
    return ScoreTable(oracle_node_betweenness(g, convention, limit).node_scores, scores, Convention(convention))


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Hop distances from plain BFS, -1 where unreachable."""
    return np.array([_bfs_distances(g, s) for s in range(g.node_count)], dtype=np.int64).reshape(
        g.node_count, g.node_count
    )


__all__ = [
    "PathSet",
    "enumerate_shortest_paths",
    "oracle_node_betweenness",
    "oracle_edge_betweenness",
    "all_pairs_distances",
]
