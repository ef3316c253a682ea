"""Serial vs parallel timing harness with per-run validation."""

from __future__ import annotations

import io
import os
import platform
import statistics
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable

import numpy as np

from ._jit import JIT_ENABLED
from .errors import ValidationFailed
from .graph import Graph
from .parallel import ParallelConfig, edge_betweenness_parallel, node_betweenness_parallel
from .scores import DEFAULT_CONVENTION, Convention, ScoreTable
from .serial import edge_betweenness_serial, node_betweenness_serial

TASKS = ("node", "edge")
MODES = ("serial", "parallel")
RTOL = 1e-6


@dataclass(frozen=True)
class BenchRow:
    task: str
    mode: str
    threads: int
    median_ms: float
    min_ms: float
    reps: int


@dataclass
class BenchReport:
    rows: list[BenchRow]
    node_count: int
    edge_count: int
    environment: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("task,mode,threads,median_ms,min_ms,reps\n")
        for r in self.rows:
            buf.write(f"{r.task},{r.mode},{r.threads},{r.median_ms:.3f},{r.min_ms:.3f},{r.reps}\n")
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [
            f"graph: {self.node_count} nodes, {self.edge_count} edges; "
            f"hardware threads: {self.environment.get('hardware_threads')}; "
            f"numba: {self.environment.get('numba')}",
            f"{'task':<6}{'mode':<10}{'threads':>8}{'median ms':>12}{'min ms':>12}{'reps':>6}",
        ]
        for r in self.rows:
            lines.append(f"{r.task:<6}{r.mode:<10}{r.threads:>8}{r.median_ms:>12.3f}{r.min_ms:>12.3f}{r.reps:>6}")
        return "\n".join(lines) + "\n"


def environment() -> dict:
    return {
        "hardware_threads": os.cpu_count() or 1,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "python": platform.python_version(),
        "numba": JIT_ENABLED,
    }


def _runner(task, mode, threads, convention, kernel, deterministic):
    if mode == "serial":
        if task == "node":
            return lambda g: node_betweenness_serial(g, convention)
        return lambda g: edge_betweenness_serial(g, convention)
    cfg = ParallelConfig(threads=threads, kernel=kernel, deterministic=deterministic)
    if task == "node":
        return lambda g: node_betweenness_parallel(g, cfg, convention)
    return lambda g: edge_betweenness_parallel(g, cfg, convention)


def _check(result: ScoreTable, reference: ScoreTable, task: str, cell) -> None:
    got = result.node_scores if task == "node" else result.edge_scores
    want = reference.node_scores if task == "node" else reference.edge_scores
    if got is None or got.shape != want.shape:
        raise ValidationFailed(cell, "shape mismatch")
    err = np.abs(got - want)
    bound = RTOL * np.maximum(np.abs(want), 1.0)
    if np.any(err > bound):
        i = int(np.argmax(err - bound))
        raise ValidationFailed(cell, f"entry {i}: {got[i]!r} vs {want[i]!r}")


def run_benchmark(
    g: Graph,
    tasks: Iterable[str] = TASKS,
    modes: Iterable[str] = MODES,
    threads_list: Iterable[int] = (8,),
    repetitions: int = 5,
    convention: Convention = DEFAULT_CONVENTION,
    kernel: str = "stack",
    deterministic: bool = False,
    warmup: bool = True,
    timer=time.perf_counter,
) -> BenchReport:
    """Time every (task, mode, threads) cell.

    Serial cells run once per task with ``threads = 1``; parallel cells run
    once per entry of ``threads_list``. Each timed result is checked against
    the serial reference before its time is accepted.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    tasks = [t for t in TASKS if t in set(tasks)]
    modes = [m for m in MODES if m in set(modes)]
    threads_list = list(threads_list)
    convention = Convention(convention)

    references = {
        "node": node_betweenness_serial(g, convention),
        "edge": edge_betweenness_serial(g, convention),
    }
    rows = []
    for task in tasks:
        for mode in modes:
            for threads in ([1] if mode == "serial" else threads_list):
                cell = (task, mode, threads)
                fn = _runner(task, mode, threads, convention, kernel, deterministic)
                if warmup:
                    fn(g)
                times = []
                for _ in range(repetitions):
                    t0 = timer()
                    result = fn(g)
                    elapsed = (timer() - t0) * 1000.0
                    _check(result, references[task], task, cell)
                    times.append(max(elapsed, 1e-6))
                rows.append(BenchRow(task, mode, threads, statistics.median(times), min(times), repetitions))
    return BenchReport(rows, g.node_count, g.edge_count, environment())

