import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ladderepp.graph import (
    Budget,
    BudgetExceeded,
    Graph,
    InvariantViolation,
    blocks,
    bfs_path,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    is_tree,
    is_two_connected,
    longest_cycle,
    max_edge_disjoint_paths,
    path_graph,
    spanning_tree,
    vertex_disjoint_paths,
)
from oracles import random_graph, to_nx


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(range(n), sorted(chosen))


def test_rejects_loops_and_parallel_edges():
    g = Graph(range(3))
    g.add_edge(0, 1)
    with pytest.raises(InvariantViolation):
        g.add_edge(1, 1)
    with pytest.raises(InvariantViolation):
        g.add_edge(1, 0)
    with pytest.raises(InvariantViolation):
        g.add_edge(0, 7)
    with pytest.raises(InvariantViolation):
        g.add_vertex(2)


def test_ids_are_dense_and_survive_deletion():
    g = complete_graph(4)
    assert g.edge_ids() == list(range(6))
    h = g.without_edges([1, 4])
    assert h.edge_ids() == [0, 2, 3, 5]
    assert h.endpoints(5) == g.endpoints(5)
    assert h.add_edge(*g.endpoints(1)) == 6  # ids are never reused
    s = g.without_vertices([0])
    assert all(s.endpoints(e) == g.endpoints(e) for e in s.edge_ids())


def test_disjoint_union_relabels():
    g, maps = disjoint_union(path_graph(3), cycle_graph(4))
    assert g.order == 7 and g.size == 6
    assert set(maps[0].values()).isdisjoint(maps[1].values())


def test_budget_is_shared_and_strict():
    b = Budget(3)
    b.tick(3)
    with pytest.raises(BudgetExceeded):
        b.tick()


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_components_match_networkx(g):
    ours = sorted(sorted(c) for c in components(g))
    ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == ref


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_blocks_match_networkx(g):
    bs, cuts = blocks(g)
    G = to_nx(g)
    ref = sorted(sorted(map(tuple, map(sorted, c))) for c in nx.biconnected_component_edges(G))
    ours = sorted(sorted(b.edges()) for b in bs if b.size)
    assert ours == ref
    assert cuts == set(nx.articulation_points(G))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8))
def test_two_connectivity_matches_networkx(g):
    G = to_nx(g)
    expect = g.order >= 3 and nx.is_biconnected(G)
    assert is_two_connected(g) == expect


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8), st.data())
def test_menger_count_equals_edge_connectivity(g, data):
    if g.order < 2:
        return
    s, t = data.draw(st.sampled_from(list(itertools.permutations(g.vertices(), 2))))
    count, paths, cut = max_edge_disjoint_paths(g, s, t, g.size + 1)
    G = to_nx(g)
    ref = nx.edge_connectivity(G, s, t) if nx.has_path(G, s, t) else 0
    assert count == ref == len(cut)
    used = set()
    for p in paths:
        assert p[0] == s and p[-1] == t
        ids = set(g.path_edges(p))
        assert not ids & used
        used |= ids
    assert bfs_path(g.without_edges(cut), [s], [t]) is None


def test_flow_bound_stops_early():
    g = complete_graph(6)
    count, paths, cut = max_edge_disjoint_paths(g, 0, 1, 2)
    assert count == 2 and len(paths) == 2


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8), st.data())
def test_vertex_disjoint_paths_are_disjoint(g, data):
    if g.order < 2:
        return
    vs = g.vertices()
    S = data.draw(st.sets(st.sampled_from(vs), min_size=1, max_size=3))
    T = data.draw(st.sets(st.sampled_from([v for v in vs if v not in S] or vs), min_size=1, max_size=3))
    if S & T:
        return
    paths = vertex_disjoint_paths(g, S, T, 3)
    seen = set()
    for p in paths:
        assert p[0] in S and p[-1] in T
        assert not set(p) & seen
        seen |= set(p)
        g.path_edges(p)  # every step is an edge
    # the count matches the vertex-connectivity between the two sets
    G = to_nx(g)
    G.add_edges_from(("s", x) for x in S)
    G.add_edges_from((y, "t") for y in T)
    assert len(paths) == min(3, nx.node_connectivity(G, "s", "t") if nx.has_path(G, "s", "t") else 0)


def _longest_cycle_brute(G: nx.Graph) -> int:
    best = 0
    for cyc in nx.simple_cycles(G):
        best = max(best, len(cyc))
    return best


@pytest.mark.parametrize("seed", range(40))
def test_longest_cycle_matches_enumeration(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(3, 8), rng.uniform(0.2, 0.7))
    cyc = longest_cycle(g)
    best = _longest_cycle_brute(to_nx(g))
    if best < 3:
        assert cyc is None
        return
    assert len(cyc) == best
    assert len(set(cyc)) == len(cyc)
    for x, y in zip(cyc, cyc[1:] + cyc[:1]):
        assert g.has_edge(x, y)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_spanning_tree(g):
    for comp in components(g):
        h = g.subgraph(comp)
        t = spanning_tree(h)
        assert is_tree(t)
        assert set(t.vertices()) == set(comp)
        assert set(t.edge_ids()) <= set(h.edge_ids())
