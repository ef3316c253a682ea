import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridbtw.errors import EmptyGraph, ParseError, SelfLoop, UnknownBus
from gridbtw.graph import neighbors
from gridbtw.ingest import ieee118, ieee118_edgelist, load, preprocess, read_edgelist, read_grid_json


def test_edgelist_basic():
    assert read_edgelist(b"1 2\n1 3\n") == [(1, 2), (1, 3)]


def test_edgelist_comment_and_comma():
    assert read_edgelist(io.BytesIO(b"# header\n2,12\n")) == [(2, 12)]


def test_edgelist_keeps_duplicates_and_string_ids():
    assert read_edgelist("A B\n\nB A\nA A\n") == [("A", "B"), ("B", "A"), ("A", "A")]


@pytest.mark.parametrize("text,line", [("1 2 3\n", 1), ("1 2\n7\n", 2)])
def test_edgelist_parse_error(text, line):
    with pytest.raises(ParseError) as exc:
        read_edgelist(text)
    assert exc.value.line == line


def test_grid_json_basic():
    doc = {"buses": [{"id": 1}, {"id": 2}], "branches": [{"from": 1, "to": 2, "x": 0.1}], "baseMVA": 100}
    records, buses = read_grid_json(json.dumps(doc).encode())
    assert records == [(1, 2)] and buses == [1, 2]


def test_grid_json_unknown_bus():
    with pytest.raises(UnknownBus) as exc:
        read_grid_json(b'{"buses":[{"id":1}],"branches":[{"from":1,"to":9}]}')
    assert exc.value.branch_index == 0


def test_grid_json_isolated_buses():
    records, buses = read_grid_json(b'{"buses":[{"id":1},{"id":2},{"id":3}],"branches":[]}')
    assert records == []
    m = preprocess(records, buses)
    assert m.graph.node_count == 3 and m.graph.edge_count == 0 and m.component_count == 3


@pytest.mark.parametrize("bad", [b"not json", b"[]", b'{"buses": [{"name": 1}], "branches": []}', b'{"buses":[{"id":1}],"branches":[{"from":1}]}'])
def test_grid_json_malformed(bad):
    with pytest.raises(ParseError):
        read_grid_json(bad)


def test_preprocess_cleaning():
    m = preprocess([(1, 2), (2, 1), (1, 1)])
    assert m.graph.node_count == 2 and m.graph.edge_count == 1
    assert m.dropped_self_loops == 1
    assert m.collapsed_parallel_branches == [(1, 2, 2)]


def test_preprocess_keeps_self_loops_when_asked():
    with pytest.raises(SelfLoop):
        preprocess([(1, 2), (1, 1)], drop_self_loops=False)


def test_preprocess_largest_component():
    m = preprocess([(1, 2), (2, 3), (7, 8)], largest_component_only=True)
    assert m.ids == [1, 2, 3]
    assert m.component_count == 2 and m.lcc_applied
    assert m.dropped_outside_component == 1


def test_preprocess_empty():
    with pytest.raises(EmptyGraph):
        preprocess([])


def test_ieee118():
    records = read_edgelist(ieee118_edgelist())
    assert len(records) == 186
    m = ieee118()
    assert m.graph.node_count == 118
    assert m.graph.edge_count == 186 - 7 == 179
    assert len(m.collapsed_parallel_branches) == 7
    assert all(mult == 2 for *_, mult in m.collapsed_parallel_branches)
    assert [m.external_id(i) for i in neighbors(m.graph, m.index_of(1))] == [2, 3]


def test_load_dispatch():
    assert load(b"1 2\n", "edgelist").graph.edge_count == 1
    assert load(b'{"buses":[{"id":"a"},{"id":"b"}],"branches":[{"from":"a","to":"b"}]}', "grid-json").ids == ["a", "b"]


records_st = st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=1, max_size=40)


@given(records_st)
def test_conservation_and_roundtrip(records):
    m = preprocess(records)
    duplicates = sum(mult - 1 for *_, mult in m.collapsed_parallel_branches)
    assert m.graph.edge_count + m.dropped_self_loops + duplicates == len(records)
    for i, ext in enumerate(m.ids):
        assert m.index_of(ext) == i and m.external_id(m.index_of(ext)) == ext


@given(records_st)
def test_idempotence(records):
    m = preprocess(records)
    again = preprocess(m.external_edges(), m.ids)
    assert again.graph == m.graph and again.ids == m.ids
    assert again.dropped_self_loops == 0 and again.collapsed_parallel_branches == []
