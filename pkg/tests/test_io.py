import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from ladderepp.graph import Graph, InvariantViolation
from ladderepp.io import DanglingReference, ParseError, dump_graph, export_dot, highlight_edges, load_witness, parse_graph
from ladderepp.walls import build_condensed_wall, embed_xwing
from oracles import random_graph


def test_triangle():
    g, labels = parse_graph('{"vertices":[0,1,2],"edges":[[0,1],[1,2],[0,2]]}')
    assert g.order == 3 and g.size == 3 and labels == {}
    assert g.edge_id(0, 2) == 2


def test_self_loop_is_rejected():
    with pytest.raises(InvariantViolation):
        parse_graph('{"vertices":[0],"edges":[[0,0]]}')


@pytest.mark.parametrize(
    "text",
    [
        '{"vertices":[0,1],"edges":[[0,1],[1,0]]}',
        '{"vertices":[0,0],"edges":[]}',
        '{"vertices":[0],"edges":[[0,5]]}',
        '{"vertices":[0],"edges":[],"labels":{"a":3}}',
    ],
)
def test_structural_errors(text):
    with pytest.raises(InvariantViolation):
        parse_graph(text)


def test_parse_errors_carry_a_location():
    with pytest.raises(ParseError) as exc:
        parse_graph('{"vertices": [0, 1],\n "edges": [[0, 1]\n')
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        parse_graph('{"vertices":[0,1],"edges":[[0,"x"]]}')
    assert exc.value.field == "edges[0]"
    with pytest.raises(ParseError) as exc:
        parse_graph('{"vertices":[0],"edges":[],"colour":1}')
    assert exc.value.field == "colour"
    with pytest.raises(ParseError):
        parse_graph(b"\xff\xfe")
    with pytest.raises(ParseError):
        parse_graph("[1, 2]")


def test_wall_round_trip():
    w = build_condensed_wall(3)
    data = dump_graph(w.graph, w.labels())
    g, labels = parse_graph(data)
    assert list(g.edge_items()) == list(w.graph.edge_items())
    assert labels["a"] == w.a and labels["z"] == w.z
    assert dump_graph(g, labels) == data
    assert data.endswith(b"\n") and b" " not in data


def test_edge_ids_with_gaps_survive():
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
    h = g.without_edges([1])
    data = dump_graph(h)
    assert json.loads(data)["edge_ids"] == [0, 2, 3]
    back, _ = parse_graph(data)
    assert list(back.edge_items()) == list(h.edge_items())
    assert "edge_ids" not in json.loads(dump_graph(g))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10))
def test_round_trip_random(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n, 0.4)
    drop = [e for e in g.edge_ids() if rng.random() < 0.2]
    g = g.without_edges(drop)
    back, _ = parse_graph(dump_graph(g))
    assert list(back.edge_items()) == list(g.edge_items()) and back.vertices() == g.vertices()


def test_dot_for_wall_with_xwing():
    w = build_condensed_wall(2)
    x = embed_xwing(w)
    dot = export_dot(w.graph, [x], w.labels()).decode()
    lines = dot.splitlines()
    assert lines[0] == "graph G {" and lines[-1] == "}"
    edge_lines = [l for l in lines if " -- " in l]
    assert len(edge_lines) == 20
    bold = [l for l in edge_lines if "style=bold" in l]
    assert len(bold) == len(highlight_edges(w.graph, x)) > 0
    assert f'{w.a} [label="a"]' in dot and f'{w.z[1]} [label="z1"]' in dot
    assert f'{w.z[0]} [label="c"]' in dot  # z0 is c


def test_dot_empty_graph():
    assert export_dot(Graph()) == b"graph G {\n}\n"


def test_dot_unknown_edge_id():
    g = Graph(range(3), [(0, 1), (1, 2)])
    with pytest.raises(DanglingReference):
        export_dot(g, [[0, 7]])
    assert b"style=bold" in export_dot(g, [[1]])


def test_witness_json_round_trip():
    w = build_condensed_wall(2)
    x = embed_xwing(w)
    assert load_witness(json.dumps(x.to_json())) == x
    with pytest.raises(ParseError):
        load_witness("{}")
