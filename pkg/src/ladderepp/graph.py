"""Undirected simple graphs with stable integer ids, plus the elementary
algorithms everything else is built on: blocks, unit-capacity flows,
longest cycles and spanning trees.

Vertex and edge ids are plain ints. Edge ids are assigned densely at
creation and survive every derived graph (``without_edges``,
``subgraph`` ...), so witnesses and hitting sets computed on a derived
graph can be reported against the original.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable, Iterator
from typing import Optional

DEFAULT_BUDGET = 10**8


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class InvariantViolation(GraphError):
    pass


class SameVertex(GraphError):
    pass


class Disconnected(GraphError):
    pass


class BudgetExceeded(GraphError):
    def __init__(self, limit: int):
        super().__init__(f"search budget of {limit} states exhausted")
        self.limit = limit


def default_budget() -> int:
    env = os.environ.get("EPP_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class Budget:
    """Counter of visited search states; exceeding ``limit`` raises.

    A single Budget may be shared by nested searches so the limit applies
    to the whole operation.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int] = None):
        self.limit = default_budget() if limit is None else limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)


def as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


def norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph.

    ``_adj[u][v]`` is the id of edge uv; ``_ends[e]`` its sorted endpoints.
    """

    __slots__ = ("_adj", "_ends", "_next_vertex", "_next_edge")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self._adj: dict[int, dict[int, int]] = {}
        self._ends: dict[int, tuple[int, int]] = {}
        self._next_vertex = 0
        self._next_edge = 0
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction -------------------------------------------------

    def add_vertex(self, v: Optional[int] = None) -> int:
        if v is None:
            v = self._next_vertex
        if v in self._adj:
            raise InvariantViolation(f"duplicate vertex {v}")
        self._adj[v] = {}
        self._next_vertex = max(self._next_vertex, v + 1)
        return v

    def add_edge(self, u: int, v: int, eid: Optional[int] = None) -> int:
        if u == v:
            raise InvariantViolation(f"self-loop at {u}")
        if u not in self._adj or v not in self._adj:
            raise InvariantViolation(f"edge {u}-{v} has an endpoint outside the vertex set")
        if v in self._adj[u]:
            raise InvariantViolation(f"parallel edge {u}-{v}")
        if eid is None:
            eid = self._next_edge
        elif eid in self._ends:
            raise InvariantViolation(f"duplicate edge id {eid}")
        self._adj[u][v] = eid
        self._adj[v][u] = eid
        self._ends[eid] = norm(u, v)
        self._next_edge = max(self._next_edge, eid + 1)
        return eid

    def add_path(self, vertices: Iterable[int]) -> list[int]:
        vs = list(vertices)
        return [self.add_edge(x, y) for x, y in zip(vs, vs[1:])]

    def copy(self) -> Graph:
        h = Graph.__new__(Graph)
        h._adj = {v: dict(nb) for v, nb in self._adj.items()}
        h._ends = dict(self._ends)
        h._next_vertex = self._next_vertex
        h._next_edge = self._next_edge
        return h

    # -- queries --------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __repr__(self) -> str:
        return f"Graph(|V|={self.order}, |E|={self.size})"

    @property
    def order(self) -> int:
        return len(self._adj)

    @property
    def size(self) -> int:
        return len(self._ends)

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edge_ids(self) -> list[int]:
        return sorted(self._ends)

    def edges(self) -> list[tuple[int, int]]:
        """Endpoint pairs (smaller first) in edge-id order."""
        return [self._ends[e] for e in sorted(self._ends)]

    def edge_items(self) -> Iterator[tuple[int, tuple[int, int]]]:
        for e in sorted(self._ends):
            yield e, self._ends[e]

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._ends[eid]

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._ends

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._adj[u][v]
        except KeyError:
            raise KeyError(f"no edge {u}-{v}") from None

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def adjacency(self, v: int) -> dict[int, int]:
        """Neighbour -> edge id. Do not mutate."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def path_edges(self, path: Iterable[int]) -> list[int]:
        vs = list(path)
        return [self._adj[x][y] for x, y in zip(vs, vs[1:])]

    def edge_set_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._ends.values()))

    # -- derived graphs -----------------------------------------------

    def without_edges(self, eids: Iterable[int]) -> Graph:
        h = self.copy()
        for e in eids:
            if e in h._ends:
                u, v = h._ends.pop(e)
                del h._adj[u][v]
                del h._adj[v][u]
        return h

    def without_vertices(self, vs: Iterable[int]) -> Graph:
        h = self.copy()
        for v in vs:
            if v not in h._adj:
                continue
            for w, e in h._adj.pop(v).items():
                del h._adj[w][v]
                del h._ends[e]
        return h

    def subgraph(self, vs: Iterable[int]) -> Graph:
        """Induced subgraph, edge ids preserved."""
        keep = set(vs)
        h = Graph.__new__(Graph)
        h._adj = {v: {w: e for w, e in self._adj[v].items() if w in keep} for v in sorted(keep)}
        h._ends = {e: uv for e, uv in self._ends.items() if uv[0] in keep and uv[1] in keep}
        h._next_vertex = self._next_vertex
        h._next_edge = self._next_edge
        return h

    def edge_subgraph(self, eids: Iterable[int]) -> Graph:
        """Subgraph formed by the given edges and their endpoints."""
        h = Graph.__new__(Graph)
        h._adj = {}
        h._ends = {}
        for e in eids:
            u, v = self._ends[e]
            h._adj.setdefault(u, {})[v] = e
            h._adj.setdefault(v, {})[u] = e
            h._ends[e] = (u, v)
        h._next_vertex = self._next_vertex
        h._next_edge = self._next_edge
        return h


def path_graph(n: int) -> Graph:
    g = Graph(range(n))
    g.add_path(range(n))
    return g


def cycle_graph(n: int) -> Graph:
    g = path_graph(n)
    g.add_edge(n - 1, 0)
    return g


def complete_graph(n: int) -> Graph:
    g = Graph(range(n))
    for u in range(n):
        for v in range(u + 1, n):
            g.add_edge(u, v)
    return g


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[dict[int, int]]]:
    """Union with vertices renumbered consecutively; returns the vertex maps."""
    g = Graph()
    maps = []
    for h in graphs:
        m = {v: g.add_vertex() for v in h.vertices()}
        for u, v in h.edges():
            g.add_edge(m[u], m[v])
        maps.append(m)
    return g, maps


# -- connectivity ---------------------------------------------------------


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.order <= 1 or len(components(g)) == 1


def bfs_path(g: Graph, sources: Iterable[int], targets, avoid=frozenset()) -> Optional[list[int]]:
    """Shortest path from any source to any target, internally avoiding ``avoid``.

    Neighbours are scanned in increasing id order, so the result is
    deterministic. Sources and targets may themselves lie in ``avoid``.
    """
    targets = set(targets)
    parent: dict[int, Optional[int]] = {}
    queue = deque()
    for s in sorted(set(sources)):
        parent[s] = None
        queue.append(s)
        if s in targets:
            return [s]
    while queue:
        x = queue.popleft()
        for y in sorted(g.adjacency(x)):
            if y in parent:
                continue
            if y in targets:
                path = [y, x]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if y in avoid:
                continue
            parent[y] = x
            queue.append(y)
    return None


def blocks(g: Graph) -> tuple[list[Graph], set[int]]:
    """Blocks (maximal 2-connected subgraphs and bridges) and cut vertices.

    Iterative Hopcroft-Tarjan over an edge stack. Isolated vertices form no
    block. Blocks are returned ordered by their smallest edge id.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    found: list[list[int]] = []
    counter = 0
    for root in g.vertices():
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        estack: list[int] = []
        stack = [(root, None, iter(g.neighbors(root)))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for w in it:
                e = g.edge_id(v, w)
                if e == parent_edge:
                    continue
                if w not in index:
                    estack.append(e)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append((w, e, iter(g.neighbors(w))))
                    advanced = True
                    break
                if index[w] < index[v]:
                    estack.append(e)
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= index[u]:
                if u == root:
                    root_children += 1
                else:
                    cut.add(u)
                comp = []
                while True:
                    e = estack.pop()
                    comp.append(e)
                    if e == parent_edge:
                        break
                found.append(comp)
        if root_children > 1:
            cut.add(root)
    found.sort(key=min)
    return [g.edge_subgraph(sorted(c)) for c in found], cut


def is_two_connected(g: Graph) -> bool:
    """2-connected in the textbook sense: at least three vertices, connected,
    and no cut vertex."""
    if g.order < 3 or not is_connected(g):
        return False
    _, cut = blocks(g)
    return not cut


# -- flows ----------------------------------------------------------------


class _UnitFlow:
    """Directed unit-capacity max-flow by BFS augmentation.

    Arcs are (tail, head) pairs. Opposite arcs between the same pair model
    an undirected edge: flow on one cancels the other.
    """

    def __init__(self):
        self.out: dict = {}
        self.cap: dict = {}
        self.orig: dict = {}

    def add_arc(self, x, y, c: int = 1) -> None:
        if (x, y) not in self.cap:
            self.out.setdefault(x, []).append(y)
            self.cap[(x, y)] = 0
            self.orig[(x, y)] = 0
        if (y, x) not in self.cap:
            self.out.setdefault(y, []).append(x)
            self.cap[(y, x)] = 0
            self.orig[(y, x)] = 0
        self.cap[(x, y)] += c
        self.orig[(x, y)] += c

    def sort(self, key=None) -> None:
        for x in self.out:
            self.out[x].sort(key=key)

    def augment(self, s, t) -> bool:
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in self.out.get(x, ()):
                if y not in parent and self.cap[(x, y)] > 0:
                    parent[y] = x
                    if y == t:
                        while parent[y] is not None:
                            p = parent[y]
                            self.cap[(p, y)] -= 1
                            self.cap[(y, p)] += 1
                            y = p
                        return True
                    queue.append(y)
        return False

    def run(self, s, t, bound: int) -> int:
        value = 0
        while value < bound and self.augment(s, t):
            value += 1
        return value

    def net(self, x, y) -> int:
        """Net flow from x to y."""
        return (self.orig[(x, y)] - self.cap[(x, y)]) - (self.orig[(y, x)] - self.cap[(y, x)])

    def reachable(self, s) -> set:
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in self.out.get(x, ()):
                if y not in seen and self.cap[(x, y)] > 0:
                    seen.add(y)
                    queue.append(y)
        return seen


def _node_key(x):
    # flow nodes are ints, (vertex, side) pairs, or 1-tuple super terminals
    if isinstance(x, int):
        return (0, x, 0)
    if len(x) == 2:
        return (0, x[0], x[1])
    return (1, 0, 0)


def _unwind(successors: dict, s, t) -> list:
    """Follow one unit of flow from s to t, consuming it; cycles are cut out."""
    path = [s]
    where = {s: 0}
    while path[-1] != t:
        nxt = successors[path[-1]]
        y = min(nxt, key=_node_key)
        nxt.remove(y)
        if y in where:
            for w in path[where[y] + 1:]:
                del where[w]
            del path[where[y] + 1:]
        else:
            where[y] = len(path)
            path.append(y)
    return path


def max_edge_disjoint_paths(g: Graph, s: int, t: int, bound: int) -> tuple[int, list[list[int]], set[int]]:
    """Up to ``bound`` edge-disjoint s-t paths, and a minimum cut when fewer exist.

    Returns ``(count, paths, cut)``. ``cut`` is a set of edge ids of size
    ``count`` separating s from t whenever ``count < bound``; otherwise it
    is empty.
    """
    if s == t:
        raise SameVertex(f"source and sink are both {s}")
    if s not in g or t not in g:
        raise KeyError("terminal not in graph")
    flow = _UnitFlow()
    for u, v in g.edges():
        flow.add_arc(u, v)
        flow.add_arc(v, u)
    flow.sort()
    value = flow.run(s, t, bound)
    succ: dict[int, list[int]] = {}
    for u, v in g.edges():
        f = flow.net(u, v)
        if f > 0:
            succ.setdefault(u, []).append(v)
        elif f < 0:
            succ.setdefault(v, []).append(u)
    paths = [_unwind(succ, s, t) for _ in range(value)]
    cut: set[int] = set()
    if value < bound:
        side = flow.reachable(s)
        cut = {e for e, (u, v) in g.edge_items() if (u in side) != (v in side)}
    return value, paths, cut


def vertex_disjoint_paths(g: Graph, sources, targets, bound: int, avoid=frozenset()) -> list[list[int]]:
    """Up to ``bound`` pairwise vertex-disjoint paths from ``sources`` to ``targets``.

    Each path starts in a distinct source and ends in a distinct target; no
    interior vertex lies in sources, targets or ``avoid``. A vertex that is
    both source and target yields a one-vertex path.
    """
    sources = sorted(set(sources))
    targets = set(targets)
    ends = set(sources) | targets
    S, T = ("src",), ("snk",)
    flow = _UnitFlow()
    for v in g.vertices():
        if v in avoid and v not in ends:
            continue
        flow.add_arc((v, 0), (v, 1))
    for u, v in g.edges():
        for x, y in ((u, v), (v, u)):
            if x in targets or y in sources:
                continue
            if (x in avoid and x not in ends) or (y in avoid and y not in ends):
                continue
            flow.add_arc((x, 1), (y, 0))
    for s in sources:
        flow.add_arc(S, (s, 0))
    for t in sorted(targets):
        if (t, 1) in flow.out:
            flow.add_arc((t, 1), T)
    flow.sort(key=_node_key)
    value = flow.run(S, T, bound)
    succ: dict = {}
    for (x, y), c in flow.orig.items():
        if c and flow.net(x, y) > 0:
            succ.setdefault(x, []).append(y)
    paths = []
    for _ in range(value):
        nodes = _unwind(succ, S, T)
        path = []
        for node in nodes[1:-1]:
            if not path or path[-1] != node[0]:
                path.append(node[0])
        paths.append(path)
    return paths


# -- cycles and trees ---------------------------------------------------------


def longest_cycle(g: Graph, budget=None) -> Optional[list[int]]:
    """A maximum-length cycle as a closed vertex list (first vertex not
    repeated), or None for forests.

    Exhaustive DFS per block, rooted at each vertex in turn and only
    visiting larger vertices, so every cycle is found from its smallest
    vertex. Prunes when the remaining reachable vertices cannot beat the
    current best.
    """
    budget = as_budget(budget)
    best: list[int] = []
    blist, _ = blocks(g)
    for b in blist:
        if b.size < 3:
            continue
        if b.order <= len(best):
            continue
        cyc = _longest_cycle_2conn(b, budget, len(best))
        if cyc and len(cyc) > len(best):
            best = cyc
    return best or None


def _longest_cycle_2conn(b: Graph, budget: Budget, floor: int) -> list[int]:
    order = b.vertices()
    n = len(order)
    best = [floor, None]
    for root in order:
        allowed = {v for v in order if v > root}
        if len(allowed) + 1 <= best[0]:
            break
        path = [root]
        on_path = {root}

        def reach_bound(x):
            seen = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for z in b.adjacency(y):
                    if z in allowed and z not in on_path and z not in seen:
                        seen.add(z)
                        stack.append(z)
            return len(seen) - 1

        def dfs(x):
            budget.tick()
            for y in sorted(b.adjacency(x)):
                if y == root and len(path) >= 3 and len(path) > best[0] and path[1] < x:
                    best[0] = len(path)
                    best[1] = list(path)
                    if best[0] == n:
                        return True
                if y not in allowed or y in on_path:
                    continue
                path.append(y)
                on_path.add(y)
                if len(path) + reach_bound(y) > best[0] and dfs(y):
                    return True
                path.pop()
                on_path.discard(y)
            return False

        if dfs(root):
            break
    return best[1] or []


def spanning_tree(g: Graph) -> Graph:
    """BFS spanning tree from the smallest vertex, edge ids preserved."""
    if g.order == 0:
        return Graph()
    if not is_connected(g):
        raise Disconnected("spanning tree of a disconnected graph")
    root = min(g.vertices())
    seen = {root}
    chosen = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adjacency(x)):
            if y not in seen:
                seen.add(y)
                chosen.append(g.edge_id(x, y))
                queue.append(y)
    t = g.edge_subgraph(chosen)
    if root not in t:
        t.add_vertex(root)
    return t


def is_tree(g: Graph) -> bool:
    return g.order >= 1 and g.size == g.order - 1 and is_connected(g)
