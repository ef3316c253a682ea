"""Immutable undirected graph in compressed adjacency (CSR) form."""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .errors import DuplicateEdge, IndexOutOfRange, NoSuchEdge, SelfLoop


class EdgeKey(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeKey":
        return cls(a, b) if a < b else cls(b, a)


class Graph:
    """Undirected, unweighted, simple graph over dense indices ``0..n-1``.

    Adjacency is stored as CSR arrays. ``indices[indptr[u]:indptr[u+1]]`` is
    the strictly increasing neighbor list of ``u`` and ``adj_edge`` holds the
    edge index of each adjacency slot. Edges are numbered in lexicographic
    order of their canonical key ``(u, v)``, ``u < v``.
    """

    __slots__ = ("node_count", "indptr", "indices", "adj_edge", "edge_array")

    def __init__(self, node_count, indptr, indices, adj_edge, edge_array):
        self.node_count = int(node_count)
        self.indptr = indptr
        self.indices = indices
        self.adj_edge = adj_edge
        self.edge_array = edge_array
        for arr in (indptr, indices, adj_edge, edge_array):
            arr.setflags(write=False)

    @property
    def edge_count(self) -> int:
        return len(self.edge_array)

    @property
    def edges(self) -> list[EdgeKey]:
        return [EdgeKey(int(u), int(v)) for u, v in self.edge_array]

    def adjacency(self, v: int) -> list[int]:
        return neighbors(self, v)

    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def __repr__(self):
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and np.array_equal(
            self.edge_array, other.edge_array
        )

    __hash__ = None


def build_graph(edge_pairs: Iterable[tuple[int, int]], node_count: int) -> Graph:
    """Build a :class:`Graph`, rejecting self-loops, duplicates and bad indices."""
    n = int(node_count)
    if n < 0:
        raise ValueError("node_count must be non-negative")
    pairs = np.asarray(list(edge_pairs), dtype=np.int64).reshape(-1, 2)

    bad = (pairs < 0) | (pairs >= n)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise IndexOutOfRange(int(pairs[i, j]), n)
    loops = pairs[:, 0] == pairs[:, 1]
    if loops.any():
        raise SelfLoop(int(pairs[loops.argmax(), 0]))

    canon = np.sort(pairs, axis=1)
    order = np.lexsort((canon[:, 1], canon[:, 0]))
    canon = canon[order]
    if len(canon) > 1:
        dup = np.all(canon[1:] == canon[:-1], axis=1)
        if dup.any():
            u, v = canon[dup.argmax()]
            raise DuplicateEdge(int(u), int(v))

    m = len(canon)
    # both directions of each edge, sorted by (source, target)
    src = np.concatenate([canon[:, 0], canon[:, 1]])
    dst = np.concatenate([canon[:, 1], canon[:, 0]])
    eid = np.concatenate([np.arange(m), np.arange(m)])
    slot_order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(
        n,
        indptr,
        dst[slot_order].astype(np.int64),
        eid[slot_order].astype(np.int64),
        canon.astype(np.int64),
    )


def _check_node(g: Graph, v: int) -> int:
    v = int(v)
    if not 0 <= v < g.node_count:
        raise IndexOutOfRange(v, g.node_count)
    return v


def neighbors(g: Graph, v: int) -> list[int]:
    v = _check_node(g, v)
    return g.indices[g.indptr[v] : g.indptr[v + 1]].tolist()


def edge_index(g: Graph, u: int, v: int) -> int:
    """Index of the canonical edge joining ``u`` and ``v`` (order-insensitive)."""
    if not (0 <= u < g.node_count and 0 <= v < g.node_count):
        raise NoSuchEdge(u, v)
    lo, hi = g.indptr[u], g.indptr[u + 1]
    pos = lo + np.searchsorted(g.indices[lo:hi], v)
    if pos < hi and g.indices[pos] == v:
        return int(g.adj_edge[pos])
    raise NoSuchEdge(u, v)


def relabel(g: Graph, perm) -> Graph:
    """Graph with node ``i`` renamed to ``perm[i]``."""
    perm = np.asarray(perm, dtype=np.int64)
    return build_graph(perm[g.edge_array].tolist(), g.node_count)


def random_connected_graph(n: int, extra_edges: int, seed=0) -> Graph:
    """Random spanning tree plus ``extra_edges`` random chords (sparse, grid-like)."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[rng.integers(0, i)])
        edges.add((min(a, b), max(a, b)))
    target = min(n - 1 + extra_edges, n * (n - 1) // 2)
    while len(edges) < target:
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return build_graph(sorted(edges), n)
