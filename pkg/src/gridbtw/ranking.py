"""Contingency-selection reports: ordered buses or branches by betweenness."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

from .ingest import GridModel, id_key
from .scores import Convention, ScoreTable, normalize_scores

__all__ = ["RankingReport", "normalize_scores", "rank", "write_report", "read_report_json"]


@dataclass
class RankingReport:
    kind: str
    rows: list[tuple] = field(default_factory=list)
    convention: Convention = Convention.PAIR_ONCE
    normalized: bool = False
    node_count: int = 0
    edge_count: int = 0

    def __eq__(self, other):
        if not isinstance(other, RankingReport):
            return NotImplemented
        return (
            self.kind == other.kind
            and [tuple(r) for r in self.rows] == [tuple(r) for r in other.rows]
            and Convention(self.convention) is Convention(other.convention)
            and self.normalized == other.normalized
            and self.node_count == other.node_count
            and self.edge_count == other.edge_count
        )


def rank(scores: ScoreTable, model: GridModel, k: Optional[int] = None, kind: str = "node") -> RankingReport:
    """Rows sorted by score descending, ties by ascending external id.

    Node rows are ``(rank, id, score)``; edge rows ``(rank, from, to, score)``.
    """
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    if kind == "node":
        values = scores.node_scores
        keys = [(model.external_id(i),) for i in range(len(values))]
    elif kind == "edge":
        if scores.edge_scores is None:
            raise ValueError("score table carries no edge scores")
        values = scores.edge_scores
        keys = [model.edge_ids(e) for e in range(len(values))]
    else:
        raise ValueError(f"kind must be 'node' or 'edge', not {kind!r}")

    order = sorted(range(len(values)), key=lambda i: (-values[i], [id_key(x) for x in keys[i]]))
    if k is not None:
        order = order[:k]
    rows = [(r, *keys[i], float(values[i])) for r, i in enumerate(order, start=1)]
    g = model.graph
    return RankingReport(kind, rows, Convention(scores.convention), scores.normalized, g.node_count, g.edge_count)


def _report_dict(report: RankingReport) -> dict:
    if report.kind == "node":
        rows = [{"rank": r, "id": x, "betweenness": s} for r, x, s in report.rows]
    else:
        rows = [{"rank": r, "from": a, "to": b, "betweenness": s} for r, a, b, s in report.rows]
    return {
        "kind": report.kind,
        "convention": str(report.convention),
        "normalized": report.normalized,
        "graph": {"nodes": report.node_count, "edges": report.edge_count},
        "rows": rows,
    }


def write_report(report: RankingReport, fmt: str = "csv") -> bytes:
    """CSV prints scores to 4 decimals; JSON keeps full precision."""
    if fmt == "json":
        return (json.dumps(_report_dict(report), indent=2) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.kind == "node":
        w.writerow(["rank", "id", "betweenness"])
    else:
        w.writerow(["rank", "from", "to", "betweenness"])
    for row in report.rows:
        w.writerow([*row[:-1], f"{row[-1]:.4f}"])
    return buf.getvalue().encode("utf-8")


def read_report_json(data) -> RankingReport:
    doc = json.loads(data)
    if doc["kind"] == "node":
        rows = [(r["rank"], r["id"], r["betweenness"]) for r in doc["rows"]]
    else:
        rows = [(r["rank"], r["from"], r["to"], r["betweenness"]) for r in doc["rows"]]
    return RankingReport(
        doc["kind"],
        rows,
        Convention(doc["convention"]),
        doc["normalized"],
        doc["graph"]["nodes"],
        doc["graph"]["edges"],
    )

