"""Read bus/branch data and turn it into a clean :class:`Graph`.

Two input formats are supported:

* edge list: one branch per line, two ids separated by whitespace or a
  comma; ``#`` comments and blank lines are skipped
* grid JSON: ``{"buses": [{"id": ...}, ...], "branches": [{"from": ..., "to": ...}, ...]}``

Cleaning (self-loops, parallel circuits, component restriction) happens in
:func:`preprocess`; the readers keep every record verbatim.
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import EmptyGraph, ParseError, UnknownBus
from .graph import Graph, build_graph

ExternalId = Union[int, str]

_INT = re.compile(r"[+-]?\d+\Z")
_SPLIT = re.compile(r"[\s,]+")


def id_key(x: ExternalId):
    """Sort key ordering integer ids numerically ahead of string ids."""
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def parse_id(token: str) -> ExternalId:
    return int(token) if _INT.match(token) else token


def _text(stream) -> str:
    if isinstance(stream, (bytes, bytearray)):
        return stream.decode("utf-8")
    if isinstance(stream, str):
        return stream
    data = stream.read()
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


def read_edgelist(stream) -> list[tuple[ExternalId, ExternalId]]:
    records = []
    for lineno, raw in enumerate(io.StringIO(_text(stream)), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        if len(tokens) != 2:
            raise ParseError(lineno, line, f"expected 2 ids, found {len(tokens)}")
        records.append((parse_id(tokens[0]), parse_id(tokens[1])))
    return records


def _json_id(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(0, where, f"bus id must be an integer or string, got {value!r}")
    return value


def read_grid_json(stream) -> tuple[list[tuple[ExternalId, ExternalId]], list[ExternalId]]:
    """Return ``(branches, buses)``; the bus list fixes the node universe."""
    try:
        doc = json.loads(_text(stream))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.doc.splitlines()[exc.lineno - 1] if exc.doc else "", exc.msg) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("buses"), list) or not isinstance(doc.get("branches"), list):
        raise ParseError(1, "<document>", 'expected top-level "buses" and "branches" lists')
    try:
        buses = [_json_id(b["id"], f"buses[{i}]") for i, b in enumerate(doc["buses"])]
    except (KeyError, TypeError) as exc:
        raise ParseError(1, "buses", "every bus needs an 'id'") from exc
    known = set(buses)
    records = []
    for i, br in enumerate(doc["branches"]):
        try:
            a = _json_id(br["from"], f"branches[{i}]")
            b = _json_id(br["to"], f"branches[{i}]")
        except (KeyError, TypeError) as exc:
            raise ParseError(1, f"branches[{i}]", "every branch needs 'from' and 'to'") from exc
        for end in (a, b):
            if end not in known:
                raise UnknownBus(i, end)
        records.append((a, b))
    return records, buses


@dataclass
class GridModel:
    graph: Graph
    ids: list[ExternalId]
    dropped_self_loops: int = 0
    collapsed_parallel_branches: list[tuple[ExternalId, ExternalId, int]] = field(default_factory=list)
    component_count: int = 1
    lcc_applied: bool = False
    input_records: int = 0
    dropped_outside_component: int = 0
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {x: i for i, x in enumerate(self.ids)}
        if len(self.index) != len(self.ids):
            raise ValueError("external ids must be unique")

    def external_id(self, i: int) -> ExternalId:
        return self.ids[i]

    def index_of(self, ext: ExternalId) -> int:
        return self.index[ext]

    def edge_ids(self, e: int) -> tuple[ExternalId, ExternalId]:
        u, v = self.graph.edge_array[e]
        return self.ids[u], self.ids[v]

    def external_edges(self) -> list[tuple[ExternalId, ExternalId]]:
        return [self.edge_ids(e) for e in range(self.graph.edge_count)]


def preprocess(
    records: Iterable[tuple[ExternalId, ExternalId]],
    node_universe: Optional[Iterable[ExternalId]] = None,
    drop_self_loops: bool = True,
    collapse_parallel: bool = True,
    largest_component_only: bool = False,
) -> GridModel:
    records = list(records)
    universe = list(node_universe) if node_universe is not None else []
    seen = set(universe)
    for a, b in records:
        for x in (a, b):
            if x not in seen:
                seen.add(x)
                universe.append(x)

    loops = sum(1 for a, b in records if a == b)
    kept = [(a, b) for a, b in records if a != b] if drop_self_loops else records

    branches: dict = {}
    for a, b in kept:
        key = frozenset((a, b))
        if key in branches:
            branches[key][2] += 1
        else:
            branches[key] = [a, b, 1]
    collapsed = [(a, b, m) for a, b, m in branches.values() if m > 1]
    edges = [(a, b) for a, b, _ in branches.values()] if collapse_parallel else kept

    ids = sorted(universe, key=id_key)
    pos = {x: i for i, x in enumerate(ids)}
    dense = np.array([(pos[a], pos[b]) for a, b in edges], dtype=np.int64).reshape(-1, 2)

    n = len(ids)
    if n == 0:
        raise EmptyGraph("no buses remain after preprocessing")
    adj = coo_matrix((np.ones(len(dense)), (dense[:, 0], dense[:, 1])), shape=(n, n))
    ncomp, labels = connected_components(adj, directed=False)

    dropped_outside = 0
    if largest_component_only and ncomp > 1:
        sizes = np.bincount(labels)
        # ties go to the component holding the lowest-sorted id
        best = labels[np.flatnonzero(sizes[labels] == sizes.max())[0]]
        keep_nodes = np.flatnonzero(labels == best)
        remap = np.full(n, -1, dtype=np.int64)
        remap[keep_nodes] = np.arange(len(keep_nodes))
        inside = labels[dense[:, 0]] == best if len(dense) else np.zeros(0, dtype=bool)
        dropped_outside = int(len(dense) - inside.sum())
        dense = remap[dense[inside]]
        ids = [ids[i] for i in keep_nodes]
        n = len(ids)

    return GridModel(
        graph=build_graph(dense.tolist(), n),
        ids=ids,
        dropped_self_loops=loops if drop_self_loops else 0,
        collapsed_parallel_branches=collapsed if collapse_parallel else [],
        component_count=int(ncomp),
        lcc_applied=bool(largest_component_only),
        input_records=len(records),
        dropped_outside_component=dropped_outside,
    )


def infer_format(path: Optional[str]) -> str:
    if path and path.lower().endswith(".json"):
        return "grid-json"
    return "edgelist"


def load(stream, fmt: str = "edgelist", **options) -> GridModel:
    if fmt == "grid-json":
        records, buses = read_grid_json(stream)
        return preprocess(records, buses, **options)
    if fmt == "edgelist":
        return preprocess(read_edgelist(stream), **options)
    raise ValueError(f"unknown input format {fmt!r}")


def ieee118_edgelist() -> str:
    """Bundled IEEE 118-bus branch list (186 branches, MATPOWER order)."""
    return resources.files("gridbtw.data").joinpath("ieee118.edges").read_text()


def ieee118() -> GridModel:
    return preprocess(read_edgelist(ieee118_edgelist()))
