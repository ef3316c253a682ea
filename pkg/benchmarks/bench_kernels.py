"""
Compare the numba-compiled Brandes kernels with the pure-Python/numpy paths.

Three variants per task (node, edge):
  jit        stack kernel compiled by numba
  python     the same stack kernel run uncompiled (GRIDBTW_DISABLE_NUMBA=1)
  superstep  the vectorized numpy level-synchronous kernel

The python variant runs in a child process so the env flag takes effect at
import time, exactly as a user would set it.

    python benchmarks/bench_kernels.py [--nodes 500] [--reps 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

CHILD = r"""
import json, sys, time
import numpy as np
from gridbtw import _jit
from gridbtw.graph import random_connected_graph
from gridbtw.serial import node_betweenness_serial, edge_betweenness_serial
n, extra, reps = map(int, sys.argv[1:4])
g = random_connected_graph(n, extra, seed=1)
out = {"jit": _jit.JIT_ENABLED}
for task, fn in (("node", node_betweenness_serial), ("edge", edge_betweenness_serial)):
    fn(g)
    ts = []
    for _ in range(reps):
        t0 = time.perf_counter(); r = fn(g); ts.append(time.perf_counter() - t0)
    out[task] = {"ms": float(np.median(ts)) * 1000,
                 "scores": (r.node_scores if task == "node" else r.edge_scores).tolist()}
print(json.dumps(out))
"""


def run_child(n, extra, reps, disable_numba):
    env = dict(os.environ)
    if disable_numba:
        env["GRIDBTW_DISABLE_NUMBA"] = "1"
    else:
        env.pop("GRIDBTW_DISABLE_NUMBA", None)
    res = subprocess.run(
        [sys.executable, "-c", CHILD, str(n), str(extra), str(reps)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(res.stdout)


def superstep_times(n, extra, reps):
    from gridbtw.graph import random_connected_graph
    from gridbtw.parallel import ParallelConfig, edge_betweenness_parallel, node_betweenness_parallel

    g = random_connected_graph(n, extra, seed=1)
    cfg = ParallelConfig(threads=1, kernel="superstep", deterministic=True)
    out = {}
    for task, fn in (("node", node_betweenness_parallel), ("edge", edge_betweenness_parallel)):
        ts = []
        for _ in range(reps):
            t0 = time.perf_counter()
            r = fn(g, cfg)
            ts.append(time.perf_counter() - t0)
        out[task] = {"ms": float(np.median(ts)) * 1000,
                     "scores": (r.node_scores if task == "node" else r.edge_scores).tolist()}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--nodes", type=int, default=500)
    ap.add_argument("--extra-edges", type=int, default=None, help="chords beyond the spanning tree (default nodes/3)")
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    extra = args.extra_edges if args.extra_edges is not None else args.nodes // 3

    print("=" * 64)
    print(f"KERNEL BENCHMARK: {args.nodes} nodes, {args.nodes - 1 + extra} edges, median of {args.reps}")
    print("=" * 64)

    jit = run_child(args.nodes, extra, args.reps, disable_numba=False)
    py = run_child(args.nodes, extra, args.reps, disable_numba=True)
    vec = superstep_times(args.nodes, extra, args.reps)
    if not jit["jit"]:
        print("note: numba unavailable, 'jit' column ran uncompiled")

    for task in ("node", "edge"):
        ref = np.asarray(jit[task]["scores"])
        for name, res in (("python", py), ("superstep", vec)):
            err = np.max(np.abs(np.asarray(res[task]["scores"]) - ref)) if len(ref) else 0.0
            assert err <= 1e-9 * max(1.0, float(np.max(np.abs(ref), initial=0))), f"{name}/{task} diverged by {err}"

    print(f"{'task':<6}{'jit ms':>12}{'python ms':>14}{'superstep ms':>15}{'python/jit':>12}")
    for task in ("node", "edge"):
        j, p, s = jit[task]["ms"], py[task]["ms"], vec[task]["ms"]
        print(f"{task:<6}{j:>12.2f}{p:>14.2f}{s:>15.2f}{p / j:>11.1f}x")


if __name__ == "__main__":
    main()
