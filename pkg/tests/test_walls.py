import itertools

import networkx as nx
import pytest

from ladderepp.walls import (
    CondensedWall,
    InvalidChunk,
    InvalidParams,
    InvalidSize,
    NotFound,
    build_condensed_wall,
    build_counterexample,
    embed_ladder13,
    embed_xwing,
    pack_ladders13,
    witness_ladder_l,
)
from ladderepp.witness import validate_witness
from oracles import is_ladder_in, to_nx, wall_by_rules, witness_edge_pairs


@pytest.mark.parametrize("r", range(1, 11))
def test_wall_closed_forms(r):
    w = build_condensed_wall(r)
    assert w.graph.order == 2 * r * r + r + 3
    assert w.graph.size == 4 * r * r + 2 * r
    ref = wall_by_rules(r)
    assert (ref.number_of_nodes(), ref.number_of_edges()) == (w.graph.order, w.graph.size)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_wall_matches_rules_up_to_isomorphism(r):
    w = build_condensed_wall(r)
    assert nx.is_isomorphic(to_nx(w.graph), wall_by_rules(r))


def test_wall_numbering_and_small_cases():
    w = build_condensed_wall(2)
    assert (w.a, w.b) == (0, 1)
    assert w.z == [2, 3, 4] and (w.c, w.d) == (2, 4)
    assert w.row(1) == [5, 6, 7, 8]
    w1 = build_condensed_wall(1)
    assert (w1.graph.order, w1.graph.size) == (6, 6)
    with pytest.raises(InvalidSize):
        build_condensed_wall(0)


def test_labels_round_trip():
    w = build_condensed_wall(3)
    back = CondensedWall.from_labels(w.graph, w.labels())
    assert back.u == w.u and back.z == w.z and back.layers == w.layers


def test_xwing_size_two():
    w = build_condensed_wall(2)
    x = embed_xwing(w)
    assert validate_witness(w.graph, x)
    assert is_ladder_in(w.graph, x, 3)
    ends = {x.attach[k][-1] for k in ("ta", "tb", "tc", "td")}
    assert ends == {w.a, w.b, w.c, w.d}


def test_xwing_fails_when_every_layer_pair_is_damaged():
    w = build_condensed_wall(2)
    with pytest.raises(NotFound):
        embed_xwing(w, [w.graph.edge_id(*w.row(1)[:2])])


def test_ladder13_in_size_five():
    w = build_condensed_wall(5)
    lad = embed_ladder13(w)
    assert lad.l == 13
    assert validate_witness(w.graph, lad)
    assert is_ladder_in(w.graph, lad, 13)


@pytest.mark.parametrize("r,n", [(5, 1), (10, 2), (11, 2), (15, 3)])
def test_pack13_disjoint(r, n):
    w = build_condensed_wall(r)
    ws = pack_ladders13(w, n)
    assert len(ws) == n
    used = []
    for lad in ws:
        assert validate_witness(w.graph, lad) and lad.l == 13
        assert is_ladder_in(w.graph, lad, 13)
        used.append(set(witness_edge_pairs(w.graph, lad)))
    for a, b in itertools.combinations(used, 2):
        assert not a & b


def test_pack13_bad_params():
    with pytest.raises(InvalidParams):
        pack_ladders13(build_condensed_wall(9), 2)
    with pytest.raises(InvalidChunk):
        embed_ladder13(build_condensed_wall(5), 1)


def test_counterexample_shape():
    gx = build_counterexample(2, 7, 4)
    assert gx.l == 14
    # every original ladder edge and attachment is doubled into length-2 paths
    assert all(len(m) == 2 for m in gx.copies.values())
    for (x, y), mids in gx.copies.items():
        assert not gx.graph.has_edge(x, y)
        for m in mids:
            assert gx.graph.degree(m) == 2
    G = to_nx(gx.graph)
    assert nx.is_connected(G)
    with pytest.raises(InvalidParams):
        build_counterexample(1, 7, 4)
    with pytest.raises(InvalidParams):
        build_counterexample(2, 6, 4)


def test_counterexample_ladder_and_deletions():
    gx = build_counterexample(2, 7, 4)
    w = witness_ladder_l(gx)
    assert w.l == 14 and validate_witness(gx.graph, w)
    assert is_ladder_in(gx.graph, w, 14)
    # a deletion inside the layers the X-wing uses forces another layer pair
    first = embed_xwing(gx.wall)
    hit = gx.graph.edge_id(first.paths["r2"][0], first.paths["r2"][1])
    moved = witness_ladder_l(gx, [hit])
    h = gx.graph.without_edges([hit])
    assert validate_witness(h, moved) and moved.l == 14
    with pytest.raises(InvalidParams):
        witness_ladder_l(gx, gx.graph.edge_ids()[:2])
