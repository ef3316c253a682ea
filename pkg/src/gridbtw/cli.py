"""Command line entry point: ``gridbtw {node-btw,edge-btw,rank,bench}``."""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import ingest
from .bench import run_benchmark
from .errors import ComputeError, InputError
from .parallel import DEFAULT_CHUNK_SIZE, DEFAULT_THREADS, ParallelConfig, edge_betweenness_parallel, node_betweenness_parallel
from .ranking import rank, write_report
from .scores import DEFAULT_CONVENTION, Convention
from .serial import edge_betweenness_serial, node_betweenness_serial

THREADS_ENV = "GRIDBTW_THREADS"

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2

log = logging.getLogger("gridbtw")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return DEFAULT_THREADS
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text):
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("thread counts must be positive")
    return values


_CONVENTION_HELP = (
    f"pair counting convention (default: {DEFAULT_CONVENTION}; this is the convention "
    "that reproduces the published IEEE 118-bus bus and branch betweenness values)"
)


def _add_input(p):
    p.add_argument("--input", "-i", default="-", help="input file, '-' for stdin (default)")
    p.add_argument("--format", choices=["edgelist", "grid-json"], help="input format (default: from extension)")
    p.add_argument("--largest-component", action="store_true", help="keep only the largest connected component")
    p.add_argument("-v", "--verbose", action="count", default=0, help="diagnostics to stderr; -vv traces supersteps")


def _add_compute(p, with_top_k=True):
    p.add_argument("--threads", "-t", type=_positive, help=f"worker threads (default {DEFAULT_THREADS}, or ${THREADS_ENV})")
    p.add_argument("--mode", choices=["serial", "parallel"], default="parallel")
    p.add_argument("--kernel", choices=["stack", "superstep"], default="stack")
    p.add_argument("--convention", choices=[c.value for c in Convention], default=DEFAULT_CONVENTION.value, help=_CONVENTION_HELP)
    p.add_argument("--deterministic", action="store_true", help="fixed reduction order; output independent of thread count")
    p.add_argument("--chunk-size", type=_positive, default=DEFAULT_CHUNK_SIZE)
    p.add_argument("--output", "-o", default="-", help="output file, '-' for stdout (default)")
    p.add_argument("--output-format", choices=["csv", "json"], default="csv")
    if with_top_k:
        p.add_argument("--top-k", "-k", type=_positive, help="only the k highest-ranked rows")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gridbtw", description="Betweenness centrality for power-network contingency selection.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("node-btw", help="bus (node) betweenness")
    _add_input(p)
    _add_compute(p)
    p.add_argument("--normalize", action="store_true", help="divide by (N-1)(N-2)/2")

    p = sub.add_parser("edge-btw", help="branch (edge) betweenness")
    _add_input(p)
    _add_compute(p)

    p = sub.add_parser("rank", help="top-k contingency ranking of buses or branches")
    _add_input(p)
    _add_compute(p, with_top_k=False)
    p.add_argument("--kind", choices=["node", "edge"], default="edge")
    p.add_argument("--top-k", "-k", type=_positive, default=10)
    p.add_argument("--normalize", action="store_true", help="divide node scores by (N-1)(N-2)/2")

    p = sub.add_parser("bench", help="time serial and parallel runs")
    _add_input(p)
    p.add_argument("--tasks", default="node,edge")
    p.add_argument("--modes", default="serial,parallel")
    p.add_argument("--threads-list", type=_int_list, default=[1, 2, 4, 8, 16])
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--kernel", choices=["stack", "superstep"], default="stack")
    p.add_argument("--convention", choices=[c.value for c in Convention], default=DEFAULT_CONVENTION.value)
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--output-format", choices=["csv", "table"], default="csv")
    return parser


def _read_model(args):
    fmt = args.format or ingest.infer_format(None if args.input == "-" else args.input)
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
    model = ingest.load(data, fmt, largest_component_only=args.largest_component)
    g = model.graph
    log.info(
        "%d buses, %d branches (%d self-loops dropped, %d parallel groups collapsed, %d components)",
        g.node_count, g.edge_count, model.dropped_self_loops,
        len(model.collapsed_parallel_branches), model.component_count,
    )
    return model


def _emit(args, payload: bytes) -> None:
    if args.output == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        with open(args.output, "wb") as fh:
            fh.write(payload)


def _compute_scores(args, model, kind):
    g = model.graph
    convention = Convention(args.convention)
    normalize = getattr(args, "normalize", False)
    if args.mode == "serial":
        if kind == "node":
            return node_betweenness_serial(g, convention, normalize)
        return edge_betweenness_serial(g, convention)
    cfg = ParallelConfig(
        threads=args.threads or _default_threads(),
        deterministic=args.deterministic,
        kernel=args.kernel,
        chunk_size=args.chunk_size,
    )
    if kind == "node":
        return node_betweenness_parallel(g, cfg, convention, normalize)
    return edge_betweenness_parallel(g, cfg, convention)


def _scores_command(args, kind) -> int:
    if getattr(args, "normalize", False) and kind != "node":
        raise InputError("--normalize applies to node scores only")
    model = _read_model(args)
    scores = _compute_scores(args, model, kind)
    report = rank(scores, model, args.top_k, kind=kind)
    _emit(args, write_report(report, args.output_format))
    return EXIT_OK


def _bench_command(args) -> int:
    model = _read_model(args)
    tasks = [t.strip() for t in args.tasks.split(",") if t.strip()]
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    if not set(tasks) <= {"node", "edge"} or not set(modes) <= {"serial", "parallel"}:
        raise InputError("tasks must be node/edge and modes serial/parallel")
    if args.reps < 1:
        raise InputError("--reps must be >= 1")
    report = run_benchmark(
        model.graph, tasks, modes, args.threads_list, args.reps,
        convention=Convention(args.convention), kernel=args.kernel,
    )
    text = report.to_csv() if args.output_format == "csv" else report.to_table()
    _emit(args, text.encode("utf-8"))
    return EXIT_OK


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(name)s: %(message)s", force=True)
    logging.captureWarnings(True)
    try:
        if args.command == "bench":
            return _bench_command(args)
        kind = "edge" if args.command == "edge-btw" or getattr(args, "kind", "node") == "edge" else "node"
        return _scores_command(args, kind)
    except (InputError, OSError, UnicodeDecodeError) as exc:
        print(f"gridbtw: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComputeError as exc:
        print(f"gridbtw: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
