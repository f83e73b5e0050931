import random

import networkx as nx
import pytest

from ladderepp.graph import Graph, complete_graph, cycle_graph, path_graph
from ladderepp.io import dump_graph
from ladderepp.structure import (
    NotATree,
    NotTwoConnected,
    TooSmall,
    chain_problems,
    classify_house_free,
    classify_ladder_free,
    count_segments,
    find_chain_bruteforce,
    tree_segments,
)
from ladderepp.witness import validate_witness
from oracles import from_nx, has_pattern, is_ladder_in, random_graph, random_tree, to_nx


def two_connected_atlas(max_n=7):
    for G in nx.graph_atlas_g()[1:]:
        if 3 <= G.number_of_nodes() <= max_n and nx.is_biconnected(G):
            yield from_nx(G)


def test_c5_is_a_chain_of_single_edges():
    c = classify_ladder_free(cycle_graph(5))
    assert c.kind == "chain"
    assert len(c.chain.blocks) == 5
    assert all(b.order == 0 for b in c.chain.blocks)
    assert c.chain.reassemble().edge_set_key() == cycle_graph(5).edge_set_key()


def test_k4_is_small():
    c = classify_ladder_free(complete_graph(4))
    assert c.kind in ("small", "short_theta")
    assert c.witness is None


def test_prism_has_a_ladder():
    g = from_nx(nx.circular_ladder_graph(3))
    c = classify_ladder_free(g)
    assert c.kind == "ladder" and validate_witness(g, c.witness) and is_ladder_in(g, c.witness, 3)


def test_needs_two_connected():
    with pytest.raises(NotTwoConnected):
        classify_ladder_free(path_graph(4))
    with pytest.raises(NotTwoConnected):
        classify_house_free(path_graph(2))


def test_house_free_cases():
    assert classify_house_free(cycle_graph(7)).kind == "cycle"
    diamond = Graph(range(4), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    c = classify_house_free(diamond)
    assert c.kind == "short_theta" and c.short_theta[1] == 2
    house = from_nx(nx.house_graph())
    assert classify_house_free(house).kind == "house"
    # K4 has no house and is neither a cycle nor a short theta
    assert classify_house_free(complete_graph(4)).kind == "small"


def _check_ladder_classification(g: Graph):
    c = classify_ladder_free(g)
    has = has_pattern(to_nx(g), "ladder3")
    assert (c.kind == "ladder") == has, g.edges()
    if c.kind == "ladder":
        assert validate_witness(g, c.witness)
    elif c.kind == "chain":
        assert chain_problems(g, c.chain) == []
        back = c.chain.reassemble()
        assert dump_graph(back) == dump_graph(g)
    return c


def test_ladder_classifier_on_small_atlas():
    kinds = {}
    for g in two_connected_atlas(6):
        c = _check_ladder_classification(g)
        kinds[c.kind] = kinds.get(c.kind, 0) + 1
    assert kinds.get("chain") and kinds.get("ladder")


@pytest.mark.parametrize("seed", range(3))
def test_ladder_classifier_on_random_two_connected(seed):
    rng = random.Random(seed)
    done = 0
    while done < 80:
        g = random_graph(rng, rng.randint(5, 9), rng.uniform(0.25, 0.6))
        if not nx.is_biconnected(to_nx(g)):
            continue
        _check_ladder_classification(g)
        done += 1


def test_house_classifier_agrees_with_enumeration():
    for g in two_connected_atlas(6):
        c = classify_house_free(g)
        assert (c.kind == "house") == has_pattern(to_nx(g), "house")


def test_bruteforce_chain_finder_on_cycles_and_thetas():
    for n in range(3, 8):
        ch = find_chain_bruteforce(cycle_graph(n))
        assert ch is not None and chain_problems(cycle_graph(n), ch) == []
    assert find_chain_bruteforce(from_nx(nx.circular_ladder_graph(3))) is None


@pytest.mark.parametrize(
    "edges,expect",
    [
        ([(0, 1)], (1, 2)),
        ([(0, 1), (0, 2), (0, 3)], (3, 3)),
        ([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)], (3, 3)),
        ([(0, 1), (1, 2), (2, 3)], (1, 2)),
    ],
)
def test_segment_examples(edges, expect):
    n = max(max(e) for e in edges) + 1
    assert count_segments(Graph(range(n), edges)) == expect


def test_segment_errors():
    with pytest.raises(TooSmall):
        count_segments(Graph([0]))
    with pytest.raises(NotATree):
        count_segments(cycle_graph(4))


def test_segments_against_degree_formula():
    rng = random.Random(5)
    for _ in range(300):
        t = random_tree(rng, rng.randint(2, 60))
        segs, leaves = count_segments(t)
        deg2 = sum(1 for v in t.vertices() if t.degree(v) == 2)
        # each degree-2 vertex glues two edges into one segment
        assert segs == t.size - deg2
        assert leaves == sum(1 for v in t.vertices() if t.degree(v) == 1)
        assert segs <= 2 * leaves
        for p in tree_segments(t):
            assert all(t.degree(v) == 2 for v in p[1:-1])
            assert t.degree(p[0]) != 2 and t.degree(p[-1]) != 2


def test_reassembly_keeps_edge_ids():
    # edges inserted around the cycle, so ids are not in sorted pair order
    order = [3, 0, 5, 1, 7, 2, 6, 4]
    g = Graph(range(8), [tuple(sorted((order[i - 1], order[i]))) for i in range(8)])
    g.add_edge(order[0], order[2])
    c = classify_ladder_free(g)
    assert c.kind == "chain"
    assert dump_graph(c.chain.reassemble()) == dump_graph(g)
