"""Source-parallel betweenness.

Sources are cut into chunks and handed to a thread pool. Each worker keeps
private accumulators, so the hot path has no shared writes; partial results
are reduced on the calling thread at the end.

Two reduction modes exist. The default lets workers pull chunks from a
shared queue and merges their totals, which is fastest but leaves the float
summation order to the scheduler. Deterministic mode keeps every source's
contribution separate and adds them in ascending source order, which makes
the result bit-identical for any thread count and equal to the serial run.
"""

from __future__ import annotations

import logging
import os
import queue
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import NormalizeTooSmall, PathCountOverflow, ShapeMismatch, WorkerError
from .graph import Graph
from .scores import DEFAULT_CONVENTION, Convention, ScoreTable, apply_convention, normalize_scores
from .superstep import superstep_contribution

log = logging.getLogger(__name__)

DEFAULT_THREADS = 8
DEFAULT_CHUNK_SIZE = 16


@dataclass(frozen=True)
class ParallelConfig:
    threads: int = DEFAULT_THREADS
    deterministic: bool = False
    kernel: str = "stack"
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.kernel not in ("stack", "superstep"):
            raise ValueError(f"unknown kernel {self.kernel!r}")


@dataclass
class ScoreFragment:
    """Partial scores from one worker (or one chunk).

    ``node`` / ``edge`` are either 1-D totals or 2-D arrays holding one row per
    entry of ``sources``.
    """

    index: int
    node: np.ndarray
    edge: Optional[np.ndarray] = None
    sources: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


def _as_fragment(i, part) -> ScoreFragment:
    if isinstance(part, ScoreFragment):
        return part
    return ScoreFragment(i, np.asarray(part, dtype=np.float64))


def _rows(arr: np.ndarray, sources: np.ndarray):
    if arr.ndim == 1:
        return [arr]
    if len(sources) == len(arr):
        return [arr[i] for i in np.argsort(sources, kind="stable")]
    return list(arr)


def _fold(acc: Optional[np.ndarray], arr: np.ndarray, sources: np.ndarray) -> np.ndarray:
    for row in _rows(arr, sources):
        if acc is None:
            acc = np.zeros(row.shape[0])
        elif row.shape[0] != acc.shape[0]:
            raise ShapeMismatch(f"fragment of length {row.shape[0]} does not match {acc.shape[0]}")
        acc += row
    return acc


def reduce_contributions(partials: Sequence, deterministic: bool = True):
    """Elementwise sum of fragments.

    Accepts :class:`ScoreFragment` objects or bare arrays. With
    ``deterministic`` the fragments are folded in index order and, inside a
    fragment, rows in ascending source order. Returns ``(node, edge)``.
    """
    frags = [_as_fragment(i, p) for i, p in enumerate(partials)]
    if deterministic:
        frags.sort(key=lambda f: f.index)
    node = edge = None
    for f in frags:
        node = _fold(node, f.node, f.sources)
        if f.edge is not None:
            edge = _fold(edge, f.edge, f.sources)
    if node is None:
        node = np.zeros(0)
    return node, edge


def _chunks(n: int, size: int) -> list[np.ndarray]:
    return [np.arange(i, min(i + size, n), dtype=np.int64) for i in range(0, n, size)]


def _stack_totals(g: Graph, sources, do_edges, node_acc, edge_acc):
    bad = kernels.accumulate_sources(g.indptr, g.indices, g.adj_edge, sources, do_edges, node_acc, edge_acc)
    if bad >= 0:
        raise WorkerError(int(bad), PathCountOverflow(int(bad)))


def _stack_rows(g: Graph, sources, do_edges):
    node_rows = np.zeros((len(sources), g.node_count))
    edge_rows = np.zeros((len(sources), g.edge_count if do_edges else 0))
    bad = kernels.source_rows(g.indptr, g.indices, g.adj_edge, sources, do_edges, node_rows, edge_rows)
    if bad >= 0:
        raise WorkerError(int(bad), PathCountOverflow(int(bad)))
    return node_rows, edge_rows


def _superstep_rows(g: Graph, sources, do_edges):
    node_rows = np.zeros((len(sources), g.node_count))
    edge_rows = np.zeros((len(sources), g.edge_count if do_edges else 0))
    for i, s in enumerate(sources):
        try:
            c = superstep_contribution(g, int(s), do_edges)
        except Exception as exc:
            raise WorkerError(int(s), exc) from exc
        node_rows[i] = c.node_add
        if do_edges:
            edge_rows[i] = c.edge_add
    return node_rows, edge_rows


def _chunk_rows(g, cfg, sources, do_edges):
    if cfg.kernel == "stack":
        try:
            return _stack_rows(g, sources, do_edges)
        except WorkerError:
            raise
        except Exception as exc:
            raise WorkerError(int(sources[0]), exc) from exc
    return _superstep_rows(g, sources, do_edges)


def _warn_oversubscription(threads: int) -> None:
    hw = os.cpu_count() or 1
    if threads > hw:
        warnings.warn(
            f"{threads} threads requested but only {hw} hardware threads available",
            RuntimeWarning,
            stacklevel=4,
        )


def dispatch_sources(g: Graph, cfg: ParallelConfig, do_edges: bool) -> list[ScoreFragment]:
    """Run every source through the pool and return the unreduced fragments.

    Non-deterministic mode yields one fragment per worker with 1-D totals;
    deterministic mode yields one fragment per chunk with per-source rows.
    """
    chunks = _chunks(g.node_count, cfg.chunk_size)
    if not chunks:
        return []
    workers = min(cfg.threads, len(chunks))

    if cfg.deterministic:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk_rows, g, cfg, c, do_edges) for c in chunks]
            out = []
            for i, (c, fut) in enumerate(zip(chunks, futures)):
                node_rows, edge_rows = fut.result()
                out.append(ScoreFragment(i, node_rows, edge_rows if do_edges else None, c))
            return out

    work: queue.SimpleQueue = queue.SimpleQueue()
    for c in chunks:
        work.put(c)

    def worker(index: int) -> ScoreFragment:
        node_acc = np.zeros(g.node_count)
        edge_acc = np.zeros(g.edge_count if do_edges else 0)
        done = []
        while True:
            try:
                c = work.get_nowait()
            except queue.Empty:
                break
            if cfg.kernel == "stack":
                try:
                    _stack_totals(g, c, do_edges, node_acc, edge_acc)
                except WorkerError:
                    raise
                except Exception as exc:
                    raise WorkerError(int(c[0]), exc) from exc
            else:
                node_rows, edge_rows = _superstep_rows(g, c, do_edges)
                node_acc += node_rows.sum(axis=0)
                if do_edges:
                    edge_acc += edge_rows.sum(axis=0)
            done.append(c)
        sources = np.concatenate(done) if done else np.zeros(0, dtype=np.int64)
        log.debug("worker %d processed %d sources", index, len(sources))
        return ScoreFragment(index, node_acc, edge_acc if do_edges else None, sources)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, range(workers)))


def _deterministic_stream(g: Graph, cfg: ParallelConfig, do_edges: bool):
    """Deterministic reduction without holding every chunk's rows at once."""
    chunks = _chunks(g.node_count, cfg.chunk_size)
    node = np.zeros(g.node_count)
    edge = np.zeros(g.edge_count) if do_edges else None
    window = max(2, 4 * cfg.threads)
    with ThreadPoolExecutor(max_workers=min(cfg.threads, max(len(chunks), 1))) as pool:
        pending = deque()
        it = iter(chunks)
        for c in it:
            pending.append((c, pool.submit(_chunk_rows, g, cfg, c, do_edges)))
            if len(pending) >= window:
                break
        while pending:
            c, fut = pending.popleft()
            node_rows, edge_rows = fut.result()
            _fold(node, node_rows, c)
            if do_edges:
                _fold(edge, edge_rows, c)
            nxt = next(it, None)
            if nxt is not None:
                pending.append((nxt, pool.submit(_chunk_rows, g, cfg, nxt, do_edges)))
    return node, edge


def _compute(g: Graph, cfg: ParallelConfig, do_edges: bool):
    _warn_oversubscription(cfg.threads)
    if g.node_count == 0:
        return np.zeros(0), (np.zeros(0) if do_edges else None)
    if cfg.deterministic:
        return _deterministic_stream(g, cfg, do_edges)
    node, edge = reduce_contributions(dispatch_sources(g, cfg, do_edges), deterministic=False)
    return node, (edge if do_edges else None)


def node_betweenness_parallel(
    g: Graph,
    cfg: Optional[ParallelConfig] = None,
    convention: Convention = DEFAULT_CONVENTION,
    normalize: bool = False,
) -> ScoreTable:
    cfg = cfg or ParallelConfig()
    convention = Convention(convention)
    if normalize and g.node_count < 3:
        raise NormalizeTooSmall(g.node_count)
    node, _ = _compute(g, cfg, False)
    table = ScoreTable(apply_convention(node, convention), None, convention)
    return normalize_scores(table) if normalize else table


def edge_betweenness_parallel(
    g: Graph,
    cfg: Optional[ParallelConfig] = None,
    convention: Convention = DEFAULT_CONVENTION,
) -> ScoreTable:
    cfg = cfg or ParallelConfig()
    convention = Convention(convention)
    node, edge = _compute(g, cfg, True)
    if edge is None:
        edge = np.zeros(g.edge_count)
    return ScoreTable(apply_convention(node, convention), apply_convention(edge, convention), convention)
