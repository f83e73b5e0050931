"""Exhaustive detection of ladders, houses, short thetas, linkages and X-wings.

All searches work on a plain adjacency map of the host graph with the
forbidden edges removed. They are exhaustive with pruning: running out of
candidates returns ``None``, running out of budget raises
``BudgetExceeded``.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator, Optional

from .graph import Budget, Graph, as_budget, blocks
from .witness import (
    LinkageWitness,
    SubdivisionWitness,
    XWING_ATTACH,
    ladder3_from_theta,
    ladder_edges,
    make_ladder,
    theta_witness,
)

Adj = dict[int, list[int]]


def adjacency_map(g: Graph, forbidden=()) -> Adj:
    bad = {g.endpoints(e) for e in forbidden if g.has_edge_id(e)}
    adj: Adj = {v: [] for v in g.vertices()}
    for u, v in g.edges():
        if (u, v) in bad:
            continue
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    return adj


def _block_maps(g: Graph, forbidden=(), min_vertices: int = 3) -> list[Adj]:
    h = g.without_edges(forbidden) if forbidden else g
    bl, _ = blocks(h)
    return [adjacency_map(b) for b in bl if b.order >= min_vertices]


def _distances(adj: Adj, t: int, blocked) -> dict[int, int]:
    dist = {t: 0}
    queue = deque([t])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist and y not in blocked:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def simple_paths(adj: Adj, s: int, t: int, blocked, lo: int, budget: Budget, hi: Optional[int] = None) -> Iterator[list[int]]:
    """Simple s-t paths with lo <= length <= hi whose vertices avoid ``blocked``.

    ``blocked`` must not contain s or t; it is not modified. Vertices that
    cannot reach t at all are pruned up front.
    """
    if s == t:
        if lo <= 0:
            yield [s]
        return
    dist = _distances(adj, t, set(blocked) | {s})
    if hi is None:
        hi = len(adj)
    path = [s]
    on_path = {s}

    def rec(x: int) -> Iterator[list[int]]:
        budget.tick()
        depth = len(path) - 1
        for y in adj[x]:
            if y == t:
                if lo <= depth + 1 <= hi:
                    yield path + [t]
                continue
            if y in on_path or y in blocked or y not in dist:
                continue
            if depth + 1 + dist[y] > hi:
                continue
            path.append(y)
            on_path.add(y)
            yield from rec(y)
            path.pop()
            on_path.discard(y)

    yield from rec(s)


def _any_path(adj: Adj, s: int, t: int, blocked, lo: int) -> Optional[list[int]]:
    """Some s-t path of length >= lo avoiding ``blocked``, for lo <= 2."""
    if lo <= 1:
        prev = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in prev or y in blocked:
                    continue
                prev[y] = x
                if y == t:
                    out = [t]
                    while prev[out[-1]] is not None:
                        out.append(prev[out[-1]])
                    return out[::-1]
                queue.append(y)
        return None
    # length >= 2: leave s through a neighbour other than t
    for w in adj[s]:
        if w == t or w in blocked:
            continue
        rest = _any_path(adj, w, t, set(blocked) | {s}, 1)
        if rest:
            return [s] + rest
    return None


# -- thetas ------------------------------------------------------------------


def _theta_pair(adj: Adj, x: int, y: int, mins: list[int], budget: Budget) -> Optional[list[list[int]]]:
    """Internally disjoint x-y paths, the i-th of length >= mins[i].

    ``mins`` is sorted in decreasing order. Paths with equal minima are
    generated with increasing second vertex to avoid permuted repeats.
    """
    chosen: list[list[int]] = []
    used: set[int] = set()

    def rec(i: int, last_second: int) -> bool:
        if i == len(mins):
            return True
        lo = mins[i]
        if i == len(mins) - 1 and lo <= 2:
            p = _any_path(adj, x, y, used, lo)
            if p is None:
                return False
            chosen.append(p)
            return True
        for p in simple_paths(adj, x, y, used, lo, budget):
            second = p[1]
            if i > 0 and mins[i] == mins[i - 1] and second <= last_second:
                continue
            chosen.append(p)
            inner = p[1:-1]
            used.update(inner)
            if rec(i + 1, second):
                return True
            used.difference_update(inner)
            chosen.pop()
        return False

    return chosen if rec(0, -1) else None


def find_theta(g: Graph, mins, forbidden=(), budget=None) -> Optional[tuple[int, int, list[list[int]]]]:
    """Two vertices x < y and internally disjoint x-y paths meeting ``mins``.

    Returns (x, y, paths) with paths ordered like ``mins`` sorted
    descending, or None.
    """
    budget = as_budget(budget)
    mins = sorted(mins, reverse=True)
    need = len(mins)
    if need == 0:
        raise ValueError("need at least one path")
    # a theta with two or more paths is 2-connected, so it sits in one block
    if need == 1:
        adj = adjacency_map(g, forbidden)
        for x in adj:
            for y in adj:
                if x < y:
                    p = _any_path(adj, x, y, set(), 1) if mins[0] <= 1 else next(simple_paths(adj, x, y, (), mins[0], budget), None)
                    if p:
                        return x, y, [p]
        return None
    min_order = 2 + sum(max(m - 1, 0) for m in mins)
    for adj in _block_maps(g, forbidden, 3):
        if len(adj) < min_order:
            continue
        cands = [v for v in adj if len(adj[v]) >= need]
        for i, x in enumerate(cands):
            for y in cands[i + 1:]:
                budget.tick()
                paths = _theta_pair(adj, x, y, mins, budget)
                if paths:
                    return x, y, paths
    return None


def find_ladder3(g: Graph, forbidden=(), budget=None) -> Optional[SubdivisionWitness]:
    """3-rung ladder as two vertices joined by paths of lengths >= 1, 3, 3."""
    found = find_theta(g, (3, 3, 1), forbidden, budget)
    if found is None:
        return None
    x, y, paths = found
    return ladder3_from_theta(x, y, paths)


def find_house(g: Graph, forbidden=(), budget=None) -> Optional[SubdivisionWitness]:
    """House subdivision: two vertices joined by paths of lengths >= 1, 2, 3."""
    found = find_theta(g, (3, 2, 1), forbidden, budget)
    if found is None:
        return None
    x, y, paths = found
    return theta_witness("house", x, y, paths)


# -- ladders -----------------------------------------------------------------


def _ear_exists(adj: Adj, u: int, v: int, used: set[int]) -> Optional[list[int]]:
    """A u-v path with at least two interior vertices, all outside ``used``."""
    for w in adj[u]:
        if w in used or w == v:
            continue
        # component of w among unused vertices
        prev = {w: None}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            if x != w and v in adj[x]:
                out = [x]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return [u] + out[::-1] + [v]
            for y in adj[x]:
                if y not in prev and y not in used:
                    prev[y] = x
                    queue.append(y)
    return None


def _room(adj: Adj, u: int, v: int, used: set[int], rungs_left: int) -> int:
    """Size of the largest unused component that could host ``rungs_left``
    further rungs after the rung u-v, or 0 if none can.

    The rest of a ladder lies in one component of the unused vertices that
    touches both u and v; it has 2*rungs_left vertices, all but two of
    degree three.
    """
    seen: set[int] = set()
    best = 0
    for w in adj[u]:
        if w in used or w in seen:
            continue
        comp = {w}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp and y not in used:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        if len(comp) < 2 * rungs_left or not any(x in comp for x in adj[v]):
            continue
        inside = comp | {u, v}
        heavy = sum(1 for x in comp if sum(1 for y in adj[x] if y in inside) >= 3)
        if heavy >= 2 * rungs_left - 2:
            best = max(best, len(comp))
    return best


def _ladder_in_block(adj: Adj, l: int, budget: Budget) -> Optional[SubdivisionWitness]:
    """Rung-by-rung search: fix rung 1, then repeatedly route an ear of length
    >= 3 between the current rung's ends and cut it into two stringer
    segments and the next rung. Ears are tried shortest first."""
    rungs: list[list[int]] = []
    su: list[list[int]] = []
    sv: list[list[int]] = []
    used: set[int] = set()

    def spare(x: int) -> bool:
        return any(y not in used for y in adj[x])

    def grow(u: int, v: int, i: int) -> bool:
        # rungs 1..i placed, (u, v) are the ends of rung i
        budget.tick()
        left = l - i
        if left == 0:
            return True
        if left == 1:
            ear = _ear_exists(adj, u, v, used)
            if ear is None:
                return False
            su.append(ear[:2])
            rungs.append(ear[1:-1])
            sv.append(ear[:-3:-1])
            return True
        room = _room(adj, u, v, used, left)
        if room == 0:
            return False
        blocked = used - {u, v}
        # the ear may use at most room - 2*(left-1) interior vertices
        for length in range(3, room - 2 * (left - 1) + 2):
            for ear in simple_paths(adj, u, v, blocked, length, budget, length):
                n = len(ear)
                used.update(ear[1:-1])
                for rung_len in range(1, n - 2):
                    for p in range(1, n - 1 - rung_len):
                        q = p + rung_len
                        if not (spare(ear[p]) and spare(ear[q])):
                            continue
                        su.append(ear[:p + 1])
                        rungs.append(ear[p:q + 1])
                        sv.append(ear[:q - 1:-1])
                        if grow(ear[p], ear[q], i + 1):
                            return True
                        su.pop()
                        rungs.pop()
                        sv.pop()
                used.difference_update(ear[1:-1])
        return False

    verts = sorted(adj)
    for u1 in verts:
        if len(adj[u1]) < 2:
            continue
        for v1 in verts:
            if v1 <= u1 or len(adj[v1]) < 2:
                continue
            for rung in simple_paths(adj, u1, v1, (), 1, budget):
                rungs.append(rung)
                used.update(rung)
                if grow(u1, v1, 1):
                    return make_ladder(rungs, su, sv)
                used.difference_update(rung)
                rungs.pop()
    return None


def find_ladder(g: Graph, l: int, forbidden=(), budget=None) -> Optional[SubdivisionWitness]:
    """An l-rung ladder subdivision avoiding ``forbidden``, or None."""
    budget = as_budget(budget)
    if l < 1:
        raise ValueError("l must be at least 1")
    if l == 1:
        adj = adjacency_map(g, forbidden)
        for u in sorted(adj):
            for v in adj[u]:
                if u < v:
                    return make_ladder([[u, v]], [], [])
        return None
    for adj in _block_maps(g, forbidden, 4):
        if len(adj) < 2 * l:
            continue
        if sum(len(n) for n in adj.values()) // 2 < 3 * l - 2:
            continue
        if sum(1 for n in adj.values() if len(n) >= 3) < 2 * l - 4:
            continue
        w = _ladder_in_block(adj, l, budget)
        if w is not None:
            return w
    return None


def max_ladder_size(g: Graph, floor: int = 1, budget=None) -> int:
    """Largest l with an l-rung ladder in g (0 when g has no edge).

    With ``floor=2`` a graph whose best is a single rung reports 0.
    """
    budget = as_budget(budget)
    if g.size == 0:
        return 0
    best = 1
    l = 2
    while find_ladder(g, l, budget=budget) is not None:
        best = l
        l += 1
    if best < floor:
        return 0
    return best


# -- short thetas --------------------------------------------------------------


def recognize_short_theta(g: Graph, allow_theta1: bool = False) -> Optional[tuple[tuple[int, int], int, int]]:
    """((x, y), r, order) if g is a short theta, else None.

    A short theta_r joins x and y by r internally disjoint paths of length
    1 or 2 (at most one of length 1), with r >= 2. A diamond is reported
    as a short theta_2 between its two degree-2 vertices. With
    ``allow_theta1`` a single edge or a path of length 2 is accepted as a
    short theta_1.
    """
    n, m = g.order, g.size
    vs = g.vertices()
    if n == 4 and m == 5:
        low = [v for v in vs if g.degree(v) == 2]
        if len(low) == 2 and not g.has_edge(*low):
            return (low[0], low[1]), 2, 2
    if allow_theta1:
        if n == 2 and m == 1:
            return (vs[0], vs[1]), 1, 0
        if n == 3 and m == 2:
            ends = [v for v in vs if g.degree(v) == 1]
            return (ends[0], ends[1]), 1, 1
    if n < 3:
        return None
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            rest = [w for w in vs if w not in (x, y)]
            if all(set(g.neighbors(w)) == {x, y} for w in rest):
                direct = g.has_edge(x, y)
                if m != 2 * len(rest) + direct:
                    continue
                r = len(rest) + direct
                if r >= 2:
                    return (x, y), r, len(rest)
    return None


# -- linkages --------------------------------------------------------------------


def _connected(adj: Adj, s: int, t: int, blocked) -> bool:
    if s in blocked or t in blocked:
        return False
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        if x == t:
            return True
        for y in adj[x]:
            if y not in seen and y not in blocked:
                seen.add(y)
                stack.append(y)
    return False


def _linkages(adj: Adj, a: int, b: int, c: int, d: int, budget: Budget) -> Iterator[tuple[list[int], list[int]]]:
    """All (a-b, c-d)-linkages, generated a-b path first.

    While the a-b path grows, c and d must stay connected outside it.
    """
    path = [a]
    on = {a}

    def rec(x: int) -> Iterator[list[int]]:
        budget.tick()
        for y in adj[x]:
            if y in on or y == c or y == d:
                continue
            path.append(y)
            on.add(y)
            if _connected(adj, c, d, on):
                if y == b:
                    yield list(path)
                else:
                    yield from rec(y)
            path.pop()
            on.discard(y)

    if not _connected(adj, c, d, on):
        return
    for p in rec(a):
        blocked = set(p)
        for q in simple_paths(adj, c, d, blocked, 1, budget):
            yield p, q


def find_linkage(g: Graph, a: int, b: int, c: int, d: int, forbidden=(), budget=None) -> Optional[LinkageWitness]:
    if len({a, b, c, d}) != 4:
        raise ValueError("a, b, c, d must be distinct")
    budget = as_budget(budget)
    adj = adjacency_map(g, forbidden)
    path = [a]
    on = {a}

    def rec(x: int) -> Optional[list[int]]:
        budget.tick()
        for y in adj[x]:
            if y in on or y == c or y == d:
                continue
            path.append(y)
            on.add(y)
            if _connected(adj, c, d, on):
                if y == b:
                    return list(path)
                found = rec(y)
                if found:
                    return found
            path.pop()
            on.discard(y)
        return None

    if not _connected(adj, c, d, on):
        return None
    p = rec(a)
    if p is None:
        return None
    q = _any_path(adj, c, d, set(p), 1)
    return LinkageWitness(tuple(p), tuple(q))


def _drop_edges(adj: Adj, pairs) -> Adj:
    out = {v: list(n) for v, n in adj.items()}
    for x, y in pairs:
        out[x].remove(y)
        out[y].remove(x)
    return out


def _path_pairs(p) -> list[tuple[int, int]]:
    return list(zip(p, p[1:]))


def _has_linkage(adj: Adj, a: int, b: int, c: int, d: int, budget: Budget) -> Optional[tuple[list[int], list[int]]]:
    return next(_linkages(adj, a, b, c, d, budget), None)


def max_linkage_packing(g: Graph, a: int, b: int, c: int, d: int, forbidden=(), budget=None, cap: Optional[int] = None) -> tuple[int, list[LinkageWitness]]:
    """Maximum number of pairwise edge-disjoint (a-b, c-d)-linkages.

    Exhaustive: each linkage found is removed and the rest searched
    recursively. Linkages are consumed in generation order, and a later
    linkage in a packing is only drawn from those generated after the
    earlier one, so every packing is examined once. Returns the count and
    one optimal packing. ``cap`` stops early once reached.
    """
    budget = as_budget(budget)
    adj = adjacency_map(g, forbidden)
    best: list[list[tuple[list[int], list[int]]]] = [[]]

    def limit(h: Adj) -> int:
        return min(len(h[a]), len(h[b]), len(h[c]), len(h[d]))

    def rec(h: Adj, chosen: list) -> bool:
        if len(chosen) > len(best[0]):
            best[0] = list(chosen)
        if cap is not None and len(best[0]) >= cap:
            return True
        if len(chosen) + limit(h) <= len(best[0]):
            return False
        for p, q in _linkages(h, a, b, c, d, budget):
            rest = _drop_edges(h, _path_pairs(p) + _path_pairs(q))
            # any further linkage needs one edge at each terminal
            if limit(rest) == 0:
                if len(chosen) + 1 > len(best[0]):
                    best[0] = chosen + [(p, q)]
                    if cap is not None and len(best[0]) >= cap:
                        return True
                continue
            if rec(rest, chosen + [(p, q)]):
                return True
        return False

    rec(adj, [])
    packing = [LinkageWitness(tuple(p), tuple(q)) for p, q in best[0]]
    return len(packing), packing


def max_edge_disjoint_linkages(w, forbidden=(), budget=None) -> int:
    """Exhaustive maximum linkage packing for a condensed wall ``w``."""
    count, _ = max_linkage_packing(w.graph, w.a, w.b, w.c, w.d, forbidden, budget)
    return count


# -- pinned subdivision engine ---------------------------------------------------


def embed_pattern(adj: Adj, order, pinned: dict[str, int], budget: Budget, degrees: Optional[dict[str, int]] = None) -> Optional[tuple[dict[str, int], dict[str, list[int]]]]:
    """Embed a pattern given as an ordered list of (key, p, q, min_length).

    Every entry's p must be placed by the time it is reached (pinned, the
    q of an earlier entry, or, for the very first entry only, free: then
    all host vertices are tried). A q not yet placed is chosen at the far
    end of the routed path; with min_length 0 the path may be trivial and
    q then shares p's host vertex. Returns (images, paths) or None.
    """
    degrees = degrees or {}
    img = dict(pinned)
    used = set(pinned.values())
    paths: dict[str, list[int]] = {}

    def open_paths(s: int, lo: int, want_deg: int) -> Iterator[list[int]]:
        path = [s]
        on = {s}

        def rec(x: int) -> Iterator[list[int]]:
            budget.tick()
            for y in adj[x]:
                if y in on or y in used:
                    continue
                path.append(y)
                on.add(y)
                if len(path) - 1 >= lo and len(adj[y]) >= want_deg:
                    yield list(path)
                yield from rec(y)
                path.pop()
                on.discard(y)

        if lo <= 0:
            yield [s]
        yield from rec(s)

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        key, p, q, lo = order[i]
        s = img[p]
        if q in img:
            t = img[q]
            if s == t:
                if lo > 0:
                    return False
                paths[key] = [s]
                if rec(i + 1):
                    return True
                del paths[key]
                return False
            for path in simple_paths(adj, s, t, used - {s, t}, max(lo, 1), budget):
                inner = path[1:-1]
                used.update(inner)
                paths[key] = path
                if rec(i + 1):
                    return True
                used.difference_update(inner)
            paths.pop(key, None)
            return False
        for path in open_paths(s, lo, degrees.get(q, 0)):
            h = path[-1]
            inner = path[1:]
            used.update(inner)
            img[q] = h
            paths[key] = path
            if rec(i + 1):
                return True
            del img[q]
            used.difference_update(inner)
        paths.pop(key, None)
        return False

    first = order[0][1]
    if first in img:
        return (img, paths) if rec(0) else None
    for v in sorted(adj):
        if len(adj[v]) < degrees.get(first, 0):
            continue
        img[first] = v
        used.add(v)
        if rec(0):
            return img, paths
        used.discard(v)
        del img[first]
    return None


def _ladder_order(l: int) -> list[tuple[str, str, str, int]]:
    """Pattern edges of an l-rung ladder in an order where each edge starts
    at a vertex already placed."""
    out = [("r1", "u1", "v1", 1)]
    for i in range(1, l):
        out.append((f"su{i}", f"u{i}", f"u{i + 1}", 1))
        out.append((f"sv{i}", f"v{i}", f"v{i + 1}", 1))
        out.append((f"r{i + 1}", f"u{i + 1}", f"v{i + 1}", 1))
    return out


def _ladder_degrees(l: int) -> dict[str, int]:
    deg: dict[str, int] = {}
    for _, p, q, _ in ladder_edges(l):
        deg[p] = deg.get(p, 0) + 1
        deg[q] = deg.get(q, 0) + 1
    return deg


def find_ladder_naive(g: Graph, l: int, forbidden=(), budget=None) -> Optional[SubdivisionWitness]:
    """Branch-vertex-by-branch-vertex ladder search (a slow cross-check)."""
    budget = as_budget(budget)
    adj = adjacency_map(g, forbidden)
    if l == 1:
        order = [("r1", "u1", "v1", 1)]
    else:
        order = _ladder_order(l)
    found = embed_pattern(adj, order, {}, budget, _ladder_degrees(l))
    if found is None:
        return None
    img, paths = found
    return SubdivisionWitness("ladder", img, {k: tuple(p) for k, p in paths.items()}, l)


def find_xwing(w, forbidden=(), budget=None) -> Optional[SubdivisionWitness]:
    """X-wing in a condensed wall: a 3-rung ladder whose first rung reaches a
    and b, and whose last rung reaches c and d, by disjoint paths."""
    budget = as_budget(budget)
    adj = adjacency_map(w.graph, forbidden)
    terminals = {"a": w.a, "b": w.b, "c": w.c, "d": w.d}
    ladder = [("r1", "u1", "v1", 1)]
    for i in (1, 2):
        ladder += [(f"su{i}", f"u{i}", f"u{i + 1}", 1), (f"sv{i}", f"v{i}", f"v{i + 1}", 1), (f"r{i + 1}", f"u{i + 1}", f"v{i + 1}", 1)]
    deg = _ladder_degrees(3)
    for far_c, far_d in (("u3", "v3"), ("v3", "u3")):
        # terminals first, so that zero-length attachments are possible at both ends
        order = [("ta", "a", "u1", 0), ("tb", "b", "v1", 0), ("r1", "u1", "v1", 1)]
        order += [("tc", "c", far_c, 0), ("td", "d", far_d, 0)]
        order += [("su1", "u1", "u2", 1), ("sv1", "v1", "v2", 1), ("r2", "u2", "v2", 1)]
        order += [("su2", "u2", "u3", 1), ("sv2", "v2", "v3", 1), ("r3", "u3", "v3", 1)]
        found = embed_pattern(adj, order, dict(terminals), budget, deg)
        if found is None:
            continue
        img, paths = found
        attach = {k: tuple(reversed(paths[k])) for k, _ in XWING_ATTACH}
        ladder_paths = {k: tuple(p) for k, p in paths.items() if k not in attach}
        return SubdivisionWitness("xwing", dict(img), ladder_paths, 3, attach)
    return None
