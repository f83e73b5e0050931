"""Marked-tree splitting and the A-m-tree packing-or-hitting algorithm."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Budget, Graph, GraphError, as_budget, components, is_tree, max_edge_disjoint_paths, spanning_tree


class TooFewMarks(GraphError, ValueError):
    pass


@dataclass
class MarkedTree:
    tree: Graph
    marked: frozenset[int]

    def __post_init__(self):
        if not is_tree(self.tree):
            raise ValueError("MarkedTree needs a tree")
        self.marked = frozenset(v for v in self.marked if v in self.tree)


@dataclass
class TreeSplit:
    """Edge-disjoint subtrees covering the tree, each owning its own marks."""

    parts: list[Graph]
    owned: list[frozenset[int]]


def _bisect(t: Graph, marked: set[int], m: int) -> tuple[Graph, set[int], Graph]:
    """Cut off a subtree T1 owning between m and 2m-1 marks.

    Root at the smallest vertex and take the deepest vertex x whose subtree
    holds at least m marks; every child branch of x holds fewer. Branches
    are added to x until m marks are collected. x's own mark, if any, goes
    to T1 and is dropped from the remainder.
    """
    root = min(t.vertices())
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    for x in order:
        for y in t.neighbors(x):
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
    below = {v: int(v in marked) for v in order}
    for v in reversed(order):
        if parent[v] is not None:
            below[parent[v]] += below[v]
    heavy = [v for v in order if below[v] >= m]
    x = max(heavy, key=lambda v: (depth[v], -v))
    children = [y for y in t.neighbors(x) if parent.get(y) == x]
    owned = {x} if x in marked else set()
    chosen: list[int] = []
    count = len(owned)
    for y in children:
        if count >= m:
            break
        chosen.append(y)
        count += below[y]
    part_vertices = {x}
    stack = list(chosen)
    while stack:
        y = stack.pop()
        part_vertices.add(y)
        stack.extend(z for z in t.neighbors(y) if parent.get(z) == y)
    owned |= {v for v in part_vertices if v in marked}
    part_edges = [e for e, (p, q) in t.edge_items() if p in part_vertices and q in part_vertices]
    t1 = t.edge_subgraph(part_edges) if part_edges else _single(x)
    rest_vertices = (set(t.vertices()) - part_vertices) | {x}
    rest_edges = [e for e, (p, q) in t.edge_items() if p in rest_vertices and q in rest_vertices]
    t2 = t.edge_subgraph(rest_edges) if rest_edges else _single(x)
    return t1, owned, t2


def _single(v: int) -> Graph:
    g = Graph()
    g.add_vertex(v)
    return g


def split_marked_tree(t: MarkedTree, k: int, m: int) -> TreeSplit:
    """k edge-disjoint subtrees covering ``t``, each owning at least m
    distinct marked vertices (needs at least 2mk marks)."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    if len(t.marked) < 2 * m * k:
        raise TooFewMarks(f"{len(t.marked)} marks, need {2 * m * k}")
    parts, owned = [], []
    cur, marks = t.tree, set(t.marked)
    for _ in range(k - 1):
        t1, own, cur = _bisect(cur, marks, m)
        parts.append(t1)
        owned.append(frozenset(own))
        marks -= own
    parts.append(cur)
    owned.append(frozenset(marks))
    return TreeSplit(parts, owned)


@dataclass
class AmTreeOutcome:
    kind: str  # "packing" or "hitting"
    trees: list[Graph] = field(default_factory=list)
    hitting: frozenset[int] = frozenset()
    method: str = "proof"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "method": self.method}
        if self.kind == "packing":
            out["trees"] = [sorted(t.edge_ids()) if t.size else t.vertices() for t in self.trees]
        else:
            out["hitting"] = sorted(self.hitting)
        return out


def verify_am_tree(t: Graph, A, m: int) -> bool:
    return is_tree(t) and len(set(t.vertices()) & set(A)) >= m


def check_am_outcome(g: Graph, A, m: int, k: int, out: AmTreeOutcome) -> list[str]:
    """Problems with a packing; hitting sets are only size-checked here."""
    problems = []
    if out.kind == "packing":
        if len(out.trees) < k:
            problems.append("fewer than k trees")
        seen: set[int] = set()
        for t in out.trees:
            if not verify_am_tree(t, A, m):
                problems.append("a tree is not an A-m-tree")
            for e in t.edge_ids():
                if not g.has_edge_id(e) or g.endpoints(e) != t.endpoints(e):
                    problems.append(f"edge {e} is not a host edge")
            if seen & set(t.edge_ids()):
                problems.append("trees share an edge")
            seen |= set(t.edge_ids())
    elif len(out.hitting) > 2 * m * m * k * k:
        problems.append("hitting set exceeds 2 m^2 k^2")
    return problems


# -- the proof's algorithm --------------------------------------------------------------


def _trees_from_paths(g: Graph, ends: list[tuple[int, list[int]]], m: int, k: int) -> list[Graph]:
    """Group a-to-A_v paths into k trees, each touching a and m-1 other A-vertices."""
    pool = list(ends)
    trees = []
    for _ in range(k):
        by_v: dict[int, list[int]] = {}
        for idx, (v, _) in enumerate(pool):
            by_v.setdefault(v, []).append(idx)
        # the sets A_v where the most paths end, ties by vertex id
        top = sorted(by_v, key=lambda v: (-len(by_v[v]), v))[: m - 1]
        use = [by_v[v][0] for v in top]
        edge_ids: set[int] = set()
        for idx in use:
            edge_ids.update(g.path_edges(pool[idx][1]))
        union = g.edge_subgraph(sorted(edge_ids))
        trees.append(spanning_tree(union))
        pool = [p for i, p in enumerate(pool) if i not in use]
    return trees


def _solve_connected(g: Graph, A: set[int], m: int, k: int, budget: Budget) -> AmTreeOutcome:
    budget.tick()
    if len(A) < m:
        return AmTreeOutcome("hitting")
    if len(A) >= 2 * m * k:
        marked = MarkedTree(spanning_tree(g), frozenset(A))
        split = split_marked_tree(marked, k, m)
        return AmTreeOutcome("packing", trees=split.parts)
    a = min(A)
    if m == 1:
        return AmTreeOutcome("packing", trees=[_single(a) for _ in range(k)])
    aux = g.copy()
    real = set(g.edge_ids())
    sink = aux.add_vertex()
    owner: dict[int, int] = {}
    for v in sorted(A - {a}):
        for _ in range(k):
            p = aux.add_vertex()
            aux.add_edge(v, p)
            aux.add_edge(p, sink)
            owner[p] = v
    bound = (m - 1) * k
    count, paths, cut = max_edge_disjoint_paths(aux, a, sink, bound)
    if count >= bound:
        ends = [(owner[p[-2]], p[:-2]) for p in paths]
        return AmTreeOutcome("packing", trees=_trees_from_paths(g, ends, m, k))
    X = cut & real
    h = g.without_edges(X)
    comp_a = next(c for c in components(h) if a in c)
    rest = h.without_vertices(comp_a)
    sub = am_tree_solve(rest, A - set(comp_a), m, k, budget, complete=False)
    if sub.kind == "packing":
        return sub
    return AmTreeOutcome("hitting", hitting=frozenset(X) | sub.hitting)


def am_tree_solve(g: Graph, A, m: int, k: int, budget=None, complete: bool = True) -> AmTreeOutcome:
    """k edge-disjoint A-m-trees, or an edge set meeting every A-m-tree.

    Components are solved separately: for each the largest k' with a
    packing is found by increasing k', and if these add up to k the
    packings are combined; otherwise the hitting sets for k'+1 are
    combined. With ``complete`` a hitting result is followed by an
    exhaustive search that upgrades it to a packing when one exists.
    """
    budget = as_budget(budget)
    A = set(A)
    if m < 1 or k < 0:
        raise ValueError("need m >= 1 and k >= 0")
    if not A <= set(g.vertices()):
        raise ValueError("A must be a set of vertices of g")
    if k == 0:
        return AmTreeOutcome("packing")
    packs: list[Graph] = []
    hitting: set[int] = set()
    for comp in components(g):
        sub_a = A & set(comp)
        if len(sub_a) < m:
            continue
        h = g.subgraph(comp)
        best: list[Graph] = []
        kk = 1
        while True:
            out = _solve_connected(h, sub_a, m, kk, budget)
            if out.kind == "hitting":
                hitting |= out.hitting
                break
            best = out.trees
            if len(packs) + len(best) >= k:
                break
            kk += 1
        packs.extend(best)
        if len(packs) >= k:
            return AmTreeOutcome("packing", trees=packs[:k])
    result = AmTreeOutcome("hitting", hitting=frozenset(hitting))
    if complete:
        found = exact_am_packing(g, A, m, k, budget)
        if found is not None:
            return AmTreeOutcome("packing", trees=found, method="exhaustive")
    return result


# -- exhaustive packing search ---------------------------------------------------------------


def minimal_am_trees(g: Graph, A: set[int], m: int, budget: Budget) -> list[frozenset[int]]:
    """Edge sets of all minimal A-m-trees: exactly m vertices of A, all
    leaves in A. Built by attaching A-vertices one path at a time."""
    if m == 1:
        return [frozenset()] if A else []
    found: set[frozenset[int]] = set()
    adj = {v: g.neighbors(v) for v in g.vertices()}

    def paths_to_tree(t: int, tree_vs: set[int]):
        # simple paths from t into the tree whose interior avoids A and the tree
        path = [t]
        on = {t}

        def rec(x):
            budget.tick()
            for y in adj[x]:
                if y in on:
                    continue
                if y in tree_vs:
                    yield path + [y]
                    continue
                if y in A:
                    continue
                path.append(y)
                on.add(y)
                yield from rec(y)
                path.pop()
                on.discard(y)

        yield from rec(t)

    def grow(tree_vs: set[int], edges: frozenset[int], count: int, start: int):
        if count == m:
            found.add(edges)
            return
        # any minimal tree grows from its smallest A-vertex by repeatedly
        # attaching the nearest remaining one
        for t in sorted(A):
            if t in tree_vs or t <= start:
                continue
            for p in paths_to_tree(t, tree_vs):
                new_edges = edges | frozenset(g.path_edges(p))
                grow(tree_vs | set(p), new_edges, count + 1, start)

    for s in sorted(A):
        grow({s}, frozenset(), 1, s)
    return sorted(found, key=lambda e: (len(e), sorted(e)))


def exact_am_packing(g: Graph, A, m: int, k: int, budget=None) -> Optional[list[Graph]]:
    budget = as_budget(budget)
    A = set(A)
    trees = minimal_am_trees(g, A, m, budget)
    if m == 1:
        if not A:
            return None
        v = min(A)
        return [_single(v) for _ in range(k)]
    chosen: list[frozenset[int]] = []

    def rec(start: int, used: frozenset[int]) -> bool:
        if len(chosen) == k:
            return True
        for i in range(start, len(trees)):
            budget.tick()
            t = trees[i]
            if t & used:
                continue
            chosen.append(t)
            if rec(i + 1, used | t):
                return True
            chosen.pop()
        return False

    if not rec(0, frozenset()):
        return None
    return [g.edge_subgraph(sorted(t)) for t in chosen]
