import itertools
import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from ladderepp.graph import Budget, BudgetExceeded, Graph, complete_graph, cycle_graph, path_graph
from ladderepp.patterns import (
    find_house,
    find_ladder,
    find_ladder3,
    find_ladder_naive,
    find_linkage,
    find_theta,
    max_ladder_size,
    max_linkage_packing,
    recognize_short_theta,
)
from ladderepp.walls import build_condensed_wall
from ladderepp.witness import validate_linkage, validate_witness, witness_problems
from oracles import has_pattern, homeomorphic, is_ladder_in, random_graph, to_nx, witness_edge_pairs

HOUSE = nx.house_graph()


def cases(count, seed, n_lo=4, n_hi=9):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        yield random_graph(rng, n, rng.uniform(0.15, 0.7))


def test_ladder3_on_prism_and_k4():
    prism = nx.circular_ladder_graph(3)
    g = Graph(range(6), sorted(tuple(sorted(e)) for e in prism.edges))
    w = find_ladder3(g)
    assert w is not None and validate_witness(g, w) and is_ladder_in(g, w, 3)
    assert find_ladder3(complete_graph(4)) is None  # too few vertices for a 6-cycle
    assert find_house(complete_graph(4)) is None


def test_house_on_house():
    g = Graph(range(5), sorted(tuple(sorted(e)) for e in HOUSE.edges))
    w = find_house(g)
    assert w is not None and validate_witness(g, w)
    assert homeomorphic(witness_edge_pairs(g, w), HOUSE)
    assert find_ladder3(g) is None


def test_forbidden_edges_are_avoided():
    g = cycle_graph(6)
    g.add_edge(0, 3)
    w = find_ladder3(g)
    assert w is not None
    used = set(g.path_edges(w.paths["r2"]))
    assert find_ladder3(g, forbidden=used) is None


@pytest.mark.parametrize("seed", range(6))
def test_finders_agree_with_theta_enumeration(seed):
    for g in cases(60, seed):
        G = to_nx(g)
        lw = find_ladder3(g)
        assert (lw is not None) == has_pattern(G, "ladder3")
        if lw is not None:
            assert validate_witness(g, lw) and is_ladder_in(g, lw, 3)
        hw = find_house(g)
        assert (hw is not None) == has_pattern(G, "house")
        if hw is not None:
            assert validate_witness(g, hw)
            assert homeomorphic(witness_edge_pairs(g, hw), HOUSE)


@pytest.mark.parametrize("seed", range(4))
def test_fast_and_naive_ladder_search_agree(seed):
    for g in cases(40, 100 + seed, 4, 9):
        for l in (2, 3, 4):
            fast = find_ladder(g, l)
            slow = find_ladder_naive(g, l)
            assert (fast is None) == (slow is None), (g.edges(), l)
            for w in (fast, slow):
                if w is not None:
                    assert validate_witness(g, w) and is_ladder_in(g, w, l)


def test_four_rungs_on_eight_vertices_is_a_spanning_copy():
    # with exactly eight vertices a 4-rung ladder cannot be subdivided
    L4 = nx.ladder_graph(4)
    rng = random.Random(7)
    for _ in range(80):
        g = random_graph(rng, 8, rng.uniform(0.3, 0.7))
        expect = GraphMatcher(to_nx(g), L4).subgraph_is_monomorphic()
        assert (find_ladder(g, 4) is not None) == expect


def test_max_ladder_size_small():
    assert max_ladder_size(Graph()) == 0
    assert max_ladder_size(path_graph(3)) == 1
    assert max_ladder_size(path_graph(3), floor=2) == 0
    assert max_ladder_size(cycle_graph(5)) == 2
    L = Graph(range(10), sorted(tuple(sorted(e)) for e in nx.ladder_graph(5).edges))
    assert max_ladder_size(L) == 5


def test_wall_ladder_sizes():
    w = build_condensed_wall(2)
    assert max_ladder_size(w.graph) == 5
    assert find_ladder(w.graph, 6) is None
    assert find_ladder_naive(w.graph, 6) is None
    assert find_ladder(w.graph, 14) is None


def test_budget_is_an_error_not_absence():
    w = build_condensed_wall(3)
    with pytest.raises(BudgetExceeded):
        find_ladder(w.graph, 7, budget=Budget(50))


def test_theta_paths_are_sorted_like_mins():
    g = cycle_graph(8)
    g.add_edge(0, 4)
    x, y, paths = find_theta(g, (1, 4, 4))
    assert sorted(len(p) - 1 for p in paths) == [1, 4, 4]
    assert [len(p) - 1 >= m for p, m in zip(paths, (4, 4, 1))] == [True] * 3


def test_short_theta_recognition():
    # theta_4: a direct edge and three length-2 paths
    g = Graph(range(5), [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)])
    assert recognize_short_theta(g) == ((0, 1), 4, 3)
    k23 = Graph(range(5), [(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)])
    assert recognize_short_theta(k23) == ((0, 1), 3, 3)
    diamond = Graph(range(4), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    assert recognize_short_theta(diamond) == ((0, 3), 2, 2)
    assert recognize_short_theta(cycle_graph(5)) is None
    assert recognize_short_theta(path_graph(2)) is None
    assert recognize_short_theta(path_graph(2), allow_theta1=True) == ((0, 1), 1, 0)
    assert recognize_short_theta(cycle_graph(4)) is not None  # C4 is a theta_2


def _linkage_oracle(g, a, b, c, d):
    G = to_nx(g)
    out = []
    for p in nx.all_simple_paths(G, a, b):
        H = G.copy()
        H.remove_nodes_from(p)
        if c in H and d in H and nx.has_path(H, c, d):
            out.append(p)
    return out


@pytest.mark.parametrize("seed", range(3))
def test_linkage_search_against_paths(seed):
    rng = random.Random(seed)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 8), rng.uniform(0.3, 0.7))
        a, b, c, d = rng.sample(g.vertices(), 4)
        lw = find_linkage(g, a, b, c, d)
        assert (lw is not None) == bool(_linkage_oracle(g, a, b, c, d))
        if lw is not None:
            assert validate_linkage(g, lw, a, b, c, d)


def _linkage_edge_sets(g, a, b, c, d):
    G = to_nx(g)
    E = lambda p: frozenset(frozenset(e) for e in zip(p, p[1:]))
    sets = []
    for p in nx.all_simple_paths(G, a, b):
        H = G.copy()
        H.remove_nodes_from(p)
        if c in H and d in H:
            for q in nx.all_simple_paths(H, c, d):
                sets.append(E(p) | E(q))
    return sets


def test_linkage_packing_on_wall_and_sanity_edges():
    w = build_condensed_wall(2)
    assert max_linkage_packing(w.graph, w.a, w.b, w.c, w.d)[0] == 1
    g = w.graph.copy()
    g.add_edge(w.a, w.b)
    g.add_edge(w.c, w.d)
    count, packing = max_linkage_packing(g, w.a, w.b, w.c, w.d)
    assert count == 2
    ids = [lw.edge_ids(g) for lw in packing]
    assert not ids[0] & ids[1]
    # the brute-force pairs agree
    sets = _linkage_edge_sets(g, w.a, w.b, w.c, w.d)
    assert any(not x & y for x, y in itertools.combinations(sets, 2))


def test_witness_problems_are_reported():
    g = cycle_graph(6)
    g.add_edge(0, 3)
    w = find_ladder3(g)
    assert witness_problems(g, w) == []
    rung = w.paths["r2"]
    assert witness_problems(g.without_edges(g.path_edges(rung)), w)
    assert not validate_witness(g, w, forbidden=g.path_edges(rung))
