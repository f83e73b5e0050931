import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ladderepp.graph import Graph, cycle_graph, disjoint_union, is_tree, path_graph
from ladderepp.trees import (
    MarkedTree,
    TooFewMarks,
    am_tree_solve,
    check_am_outcome,
    exact_am_packing,
    minimal_am_trees,
    split_marked_tree,
    verify_am_tree,
)
from ladderepp.graph import Budget
from oracles import am_trees, max_disjoint, random_graph, random_tree, to_nx


def star(n):
    return Graph(range(n + 1), [(0, i) for i in range(1, n + 1)])


def _check_split(t: Graph, marked, k, m):
    split = split_marked_tree(MarkedTree(t, frozenset(marked)), k, m)
    assert len(split.parts) == k
    seen_edges = set()
    for part, own in zip(split.parts, split.owned):
        assert is_tree(part)
        assert len(own) >= m
        assert own <= set(part.vertices()) & set(marked)
        assert not seen_edges & set(part.edge_ids())
        seen_edges |= set(part.edge_ids())
    for a, b in itertools.combinations(split.owned, 2):
        assert not a & b
    return split


def test_split_path_all_marked():
    _check_split(path_graph(7), range(7), 3, 1)


def test_split_star():
    _check_split(star(8), range(1, 9), 2, 2)


def test_split_needs_enough_marks():
    with pytest.raises(TooFewMarks):
        split_marked_tree(MarkedTree(star(8), frozenset(range(1, 8))), 2, 2)
    with pytest.raises(ValueError):
        MarkedTree(cycle_graph(4), frozenset())


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 40), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_split_random_trees(n, k, m, seed):
    rng = random.Random(seed)
    t = random_tree(rng, n)
    if n < 2 * m * k:
        return
    marked = rng.sample(range(n), rng.randint(2 * m * k, n))
    _check_split(t, marked, k, m)


def test_verify_am_tree():
    assert verify_am_tree(path_graph(3), {0, 1, 2}, 3)
    assert not verify_am_tree(cycle_graph(3), {0, 1, 2}, 3)
    assert not verify_am_tree(path_graph(3), {0, 1}, 3)


def test_two_triangles_pack():
    g, maps = disjoint_union(cycle_graph(3), cycle_graph(3))
    out = am_tree_solve(g, g.vertices(), 3, 2)
    assert out.kind == "packing" and not check_am_outcome(g, g.vertices(), 3, 2, out)


def test_star_leaves_hit():
    g = star(4)
    out = am_tree_solve(g, range(1, 5), 3, 2)
    assert out.kind == "hitting"
    assert not check_am_outcome(g, range(1, 5), 3, 2, out)
    h = g.without_edges(out.hitting)
    assert not minimal_am_trees(h, set(range(1, 5)), 3, Budget())


def test_too_few_a_vertices():
    out = am_tree_solve(path_graph(5), {0, 4}, 3, 2)
    assert out.kind == "hitting" and out.hitting == frozenset()


def test_bad_arguments():
    with pytest.raises(ValueError):
        am_tree_solve(path_graph(3), {7}, 2, 1)
    with pytest.raises(ValueError):
        am_tree_solve(path_graph(3), {0}, 0, 1)


def _edge_pairs(g, ids):
    return {g.endpoints(e) for e in ids}


@pytest.mark.parametrize("m", [2, 3])
def test_minimal_trees_match_networkx(m):
    rng = random.Random(m)
    for _ in range(60):
        g = random_graph(rng, rng.randint(3, 7), rng.uniform(0.3, 0.7))
        A = set(rng.sample(g.vertices(), rng.randint(m, g.order)))
        ours = {frozenset(_edge_pairs(g, t)) for t in minimal_am_trees(g, A, m, Budget())}
        assert ours == am_trees(to_nx(g), A, m)


@pytest.mark.parametrize("seed", range(4))
def test_solver_against_brute_force(seed):
    rng = random.Random(seed)
    for _ in range(60):
        g = random_graph(rng, rng.randint(3, 7), rng.uniform(0.3, 0.8))
        A = set(rng.sample(g.vertices(), rng.randint(1, g.order)))
        m, k = rng.randint(2, 3), rng.randint(1, 3)
        out = am_tree_solve(g, A, m, k)
        assert not check_am_outcome(g, A, m, k, out)
        trees = am_trees(to_nx(g), A, m)
        feasible = max_disjoint(trees, k) >= k
        assert (out.kind == "packing") == feasible
        if out.kind == "hitting":
            X = _edge_pairs(g, out.hitting)
            assert all(t & X for t in trees)


def test_exact_packing_none_when_impossible():
    assert exact_am_packing(star(4), set(range(1, 5)), 3, 2) is None
    assert len(exact_am_packing(star(4), set(range(1, 5)), 2, 2)) == 2
