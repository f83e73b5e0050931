"""Either/or solvers for the 3-rung ladder and the house.

Each solver returns k edge-disjoint subdivisions or an edge set whose
removal leaves none. The pipeline reduces to blocks, strips small
subdivisions, picks a vertex hitting set greedily and then handles one
hitting vertex at a time with the preleaf-tree argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import (
    Budget,
    BudgetExceeded,
    Graph,
    GraphError,
    InvariantViolation,
    as_budget,
    bfs_path,
    blocks,
    components,
    longest_cycle,
    max_edge_disjoint_paths,
)
from .patterns import adjacency_map, embed_pattern, find_house, find_ladder3, find_ladder_naive, simple_paths, _block_maps
from .structure import classify_ladder_free, tree_segments
from .trees import MarkedTree, am_tree_solve, split_marked_tree
from .witness import SubdivisionWitness, ladder3_from_theta, theta_witness, validate_witness

PATTERNS = ("ladder3", "house")
MINS = {"ladder3": (3, 3, 1), "house": (3, 2, 1)}
MIN_ORDER = {"ladder3": 6, "house": 5}
SMALL_EDGES = 7
PHASES = ("strip", "claim3", "claim4", "am_tree", "claim5", "fallback")


class AssumptionViolated(GraphError):
    pass


@dataclass
class EppCertificate:
    kind: str  # "packing" or "hitting"
    pattern: str
    witnesses: list[SubdivisionWitness] = field(default_factory=list)
    hitting: frozenset[int] = frozenset()

    @property
    def k_prime(self) -> int:
        return len(self.witnesses)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "pattern": self.pattern}
        if self.kind == "packing":
            out["k"] = self.k_prime
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        else:
            out["hitting"] = sorted(self.hitting)
        return out

    @classmethod
    def from_json(cls, data: dict) -> EppCertificate:
        kind = data["kind"]
        if kind == "packing":
            ws = [SubdivisionWitness.from_json(w) for w in data.get("witnesses", [])]
            return cls(kind, data["pattern"], witnesses=ws)
        if kind == "hitting":
            return cls(kind, data["pattern"], hitting=frozenset(data.get("hitting", [])))
        raise ValueError(f"unknown certificate kind {kind!r}")


@dataclass
class PreleafAnalysis:
    tree: Graph
    v: int
    preleaves: frozenset[int]
    one_preleaves: frozenset[int]
    orders: dict[int, int]
    moves: int = 0
    cap_hit: bool = False


@dataclass
class SolveReport:
    pattern: str
    k: int
    branch: str = ""
    method: str = "proof"
    tallies: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PHASES, 0))
    size: int = 0
    bound: Optional[int] = None
    raw_size: int = 0
    vertex_hitting: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    budget_used: int = 0

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "k": self.k,
            "branch": self.branch,
            "method": self.method,
            "tallies": dict(self.tallies),
            "size": self.size,
            "size_before_minimizing": self.raw_size,
            "bound_one_vertex": self.bound,
            "vertex_hitting_set": self.vertex_hitting,
            "notes": list(self.notes),
            "budget_used": self.budget_used,
        }


# hitting sets are kept tagged by the phase that removed each edge
Tagged = dict[str, set[int]]


def _merge(a: Tagged, b: Tagged) -> Tagged:
    for phase, es in b.items():
        a.setdefault(phase, set()).update(es)
    return a


def _flat(t: Tagged) -> set[int]:
    out: set[int] = set()
    for es in t.values():
        out |= es
    return out


def _finder(pattern: str) -> Callable:
    return find_ladder3 if pattern == "ladder3" else find_house


def _theta(pattern: str, x: int, y: int, paths) -> SubdivisionWitness:
    """Witness from three internally disjoint x-y paths of lengths
    dominating (3, 3, 1); such a theta is a ladder and hence a house."""
    if pattern == "ladder3":
        return ladder3_from_theta(x, y, paths)
    return theta_witness("house", x, y, paths)


@dataclass
class _Ctx:
    pattern: str
    budget: Budget
    report: SolveReport


def _combine(parts: list[Graph], k: int, solve_one) -> tuple[Optional[list[SubdivisionWitness]], Tagged]:
    """Edge-disjoint parts solved separately: the largest packing of each
    is found by raising k' until the part answers with a hitting set."""
    packs: list[SubdivisionWitness] = []
    tagged: Tagged = {}
    for h in parts:
        best: list[SubdivisionWitness] = []
        kk = 1
        while True:
            ws, hit = solve_one(h, kk)
            if ws is None:
                _merge(tagged, hit)
                break
            best = ws
            if len(packs) + len(best) >= k:
                break
            kk = len(best) + 1
        packs.extend(best)
        if len(packs) >= k:
            return packs[:k], {}
    return None, tagged


# -- small subdivisions ---------------------------------------------------------------


def find_small(g: Graph, pattern: str, max_edges: int = SMALL_EDGES, budget=None) -> Optional[SubdivisionWitness]:
    """A subdivision with at most ``max_edges`` edges."""
    budget = as_budget(budget)
    mins = sorted(MINS[pattern], reverse=True)
    slack = max_edges - sum(mins)
    if slack < 0:
        return None
    for adj in _block_maps(g, (), 3):
        cands = sorted(v for v in adj if len(adj[v]) >= 3)
        for i, x in enumerate(cands):
            for y in cands[i + 1:]:
                found = _small_pair(adj, x, y, mins, slack, budget)
                if found:
                    return _theta(pattern, x, y, found)
    return None


def _small_pair(adj, x, y, mins, slack, budget):
    chosen: list[list[int]] = []
    blocked: set[int] = set()

    def rec(i: int, spare: int) -> bool:
        if i == len(mins):
            return True
        for p in simple_paths(adj, x, y, blocked, mins[i], budget, mins[i] + spare):
            inner = set(p[1:-1])
            if mins[i] == 1 and len(p) == 2 and any(len(c) == 2 for c in chosen):
                continue
            chosen.append(p)
            blocked.update(inner)
            if rec(i + 1, spare - (len(p) - 1 - mins[i])):
                return True
            chosen.pop()
            blocked.difference_update(inner)
        return False

    return [list(p) for p in chosen] if rec(0, slack) else None


# -- preleaf tree -------------------------------------------------------------------


def _tree_stats(adj: dict[int, set[int]]) -> tuple[set[int], set[int], dict[int, int]]:
    leaves = {x for x, nb in adj.items() if len(nb) == 1}
    orders: dict[int, int] = {}
    if len(adj) >= 3:
        for ell in leaves:
            (w,) = adj[ell]
            orders[w] = orders.get(w, 0) + 1
    A = set(orders)
    B = {w for w, c in orders.items() if c == 1}
    return A, B, orders


def _prune(adj: dict[int, set[int]], keep: set[int]) -> None:
    stack = [x for x, nb in adj.items() if len(nb) <= 1 and x not in keep]
    while stack:
        x = stack.pop()
        if x not in adj or x in keep or len(adj[x]) > 1:
            continue
        for y in adj.pop(x):
            adj[y].discard(x)
            if len(adj[y]) <= 1 and y not in keep:
                stack.append(y)


def _tree_graph(g: Graph, adj: dict[int, set[int]]) -> Graph:
    eids = {g.edge_id(x, y) for x, nb in adj.items() for y in nb}
    t = g.edge_subgraph(sorted(eids))
    for x in adj:
        if x not in t:
            t.add_vertex(x)
    return t


def preleaf_tree(g: Graph, v: int, cap: Optional[int] = None) -> PreleafAnalysis:
    """A tree in g - v containing every neighbour of v, all of whose leaves
    are neighbours of v, locally optimised for many preleaves and then few
    1-preleaves by leaf-rerouting exchanges."""
    nv = set(g.neighbors(v))
    h = g.without_vertices([v])
    start = min(nv)
    adj: dict[int, set[int]] = {start: set()}
    queue = [start]
    for x in queue:
        for y in h.neighbors(x):
            if y not in adj:
                adj[y] = {x}
                adj[x].add(y)
                queue.append(y)
    if not nv <= set(adj):
        raise InvariantViolation("neighbours of v are not connected in g - v")
    _prune(adj, nv)
    cap = 10 * max(g.size, 1) if cap is None else cap
    moves = 0

    def score(a):
        A, B, _ = _tree_stats(a)
        return len(A), -len(B)

    current = score(adj)
    improved = True
    while improved and moves < cap:
        improved = False
        for ell in sorted(x for x, nb in adj.items() if len(nb) == 1):
            if len(adj) < 3:
                break
            (w,) = adj[ell]
            for x in sorted(set(h.neighbors(ell)) - {w}):
                if x in adj and x != ell:
                    path = [x]
                else:
                    targets = set(adj) - {ell}
                    path = bfs_path(h, [x], targets, avoid={ell})
                    if path is None:
                        continue
                trial = {a: set(b) for a, b in adj.items()}
                trial[ell].discard(w)
                trial[w].discard(ell)
                trial[ell].add(x)
                trial.setdefault(x, set()).add(ell)
                for p, q in zip(path, path[1:]):
                    trial.setdefault(p, set()).add(q)
                    trial.setdefault(q, set()).add(p)
                _prune(trial, nv)
                s = score(trial)
                if s > current:
                    adj, current = trial, s
                    moves += 1
                    improved = True
                    break
            if improved or moves >= cap:
                break
    A, B, orders = _tree_stats(adj)
    return PreleafAnalysis(_tree_graph(g, adj), v, frozenset(A), frozenset(B), orders, moves, moves >= cap)


# -- claims -------------------------------------------------------------------------


def _spider(t: Graph, a1: int, a2: int, a3: int) -> tuple[int, list[list[int]]]:
    """Centre r and the three tree paths from r to a1, a2, a3."""
    p = bfs_path(t, [a1], {a2})
    q = bfs_path(t, [a3], set(p))
    r = q[-1]
    i = p.index(r)
    return r, [p[i::-1], p[i:], q[::-1]]


def claim1_ladders(g: Graph, pa: PreleafAnalysis, k: int, pattern: str) -> list[SubdivisionWitness]:
    """k edge-disjoint subdivisions from a tree with at least 6k preleaves."""
    t = pa.tree
    leaves = {x for x in t.vertices() if t.degree(x) == 1}
    split = split_marked_tree(MarkedTree(t, pa.preleaves), k, 3)
    out = []
    for part, owned in zip(split.parts, split.owned):
        a1, a2, a3 = sorted(owned)[:3]
        r, legs = _spider(part, a1, a2, a3)
        paths = []
        for leg in legs:
            ell = min(y for y in t.neighbors(leg[-1]) if y in leaves)
            paths.append(leg + [ell, pa.v])
        out.append(_theta(pattern, r, pa.v, paths))
    return out


def claim2_ladders(path: list[int], v: int, nbrs: set[int], n: int, pattern: str) -> list[SubdivisionWitness]:
    """n subdivisions meeting only in v from a path with 5n neighbours of v."""
    hits = [i for i, x in enumerate(path) if x in nbrs]
    out = []
    for j in range(n):
        i1, _, i3, _, i5 = hits[5 * j:5 * j + 5]
        mid = path[i3]
        out.append(_theta(pattern, mid, v, [[mid, v], path[i1:i3 + 1][::-1] + [v], path[i3:i5 + 1] + [v]]))
    return out


def _v_edges(g: Graph, v: int, targets) -> set[int]:
    return {g.edge_id(v, x) for x in targets if g.has_edge(v, x)}


def _split_hub(g: Graph, v: int, groups: dict[int, list[int]]) -> tuple[Graph, dict[int, int]]:
    """Replace v by one copy per preleaf, keeping edge ids."""
    h = g.without_vertices([v])
    copies = {}
    for w, leaves in sorted(groups.items()):
        vi = h.add_vertex()
        copies[vi] = w
        for ell in leaves:
            h.add_edge(vi, ell, g.edge_id(v, ell))
    return h, copies


def _ladder_from_am_tree(t: Graph, copies: dict[int, int], v: int, pattern: str) -> SubdivisionWitness:
    marks = sorted(x for x in t.vertices() if x in copies)[:3]
    r, legs = _spider(t, *marks)
    paths = [leg[:-1] + [v] for leg in legs]
    return _theta(pattern, r, v, paths)


def _houses_from_paths(g: Graph, t_list: list[Graph], copies: dict[int, int], groups: dict[int, list[int]], v: int, k: int):
    """Close each A_v-path into a cycle through v and add a spare leaf of
    one of its two preleaves as the third theta path."""
    used: set[int] = set()
    out = []
    for t in t_list:
        ends = sorted(x for x in t.vertices() if x in copies)[:2]
        p = bfs_path(t, [ends[0]], {ends[1]})
        inner = p[1:-1]
        pe = set(g.path_edges([v] + inner + [v]))
        if pe & used:
            continue
        for w, near in ((copies[p[0]], 0), (copies[p[-1]], -1)):
            spare = next((ell for ell in groups[w] if ell not in inner
                          and not {g.edge_id(v, ell), g.edge_id(ell, w)} & (used | pe)), None)
            if spare is None:
                continue
            seq = inner if near == 0 else inner[::-1]
            # seq runs leaf, w, ..., other leaf
            out.append(theta_witness("house", w, v, [[w, seq[0], v], seq[1:] + [v], [w, spare, v]]))
            used |= pe | {g.edge_id(v, spare), g.edge_id(spare, w)}
            break
        if len(out) >= k:
            break
    return out


def _claim5_parts(b: Graph, v: int):
    nv = set(b.neighbors(v))
    rest = b.without_vertices(nv | {v})
    if rest.order == 0 or len(components(rest)) != 1:
        return None
    ws = sorted({w for x in nv for w in b.neighbors(x) if w != v and w not in nv})
    if len(ws) != 2 or any(set(b.neighbors(x)) - {v} - set(ws) for x in nv):
        return None
    parts = []
    for w in ws:
        leaves = [x for x in nv if b.has_edge(x, w)]
        parts.append(b.subgraph([v, w] + leaves))
    if rest.size:
        parts.extend(blk for blk in blocks(rest)[0])
    return parts


def _passing(b: Graph, part: Graph) -> list[int]:
    inside = set(part.vertices())
    pe = set(part.edge_ids())
    return sorted(x for x in inside if any(e not in pe for e in b.adjacency(x).values()))


def claim5(b: Graph, v: int, ell: int, ctx: _Ctx) -> tuple[Optional[list[SubdivisionWitness]], Tagged]:
    """Either ell edge-disjoint ladders in the block or at most 3ell+1 edges
    meeting all of them."""
    finder = _finder(ctx.pattern)
    parts = _claim5_parts(b, v)
    if parts is None:
        ctx.report.notes.append("claim5: block does not have the two-preleaf shape")
        return None, {"fallback": set(b.adjacency(v).values())}
    info = []
    for part in parts:
        pp = _passing(b, part)
        if len(pp) != 2:
            ctx.report.notes.append("claim5: part without exactly two passing points")
            return None, {"fallback": set(b.adjacency(v).values())}
        info.append((part, pp))
    # Menger step
    worst = None
    for part, (p, q) in info:
        count, paths, cut = max_edge_disjoint_paths(part, p, q, 3 * ell + 2)
        if count < 3 * ell + 2 and (worst is None or count < worst[0]):
            worst = (count, cut)
    if worst is not None:
        cut = set(worst[1])
        if finder(b.without_edges(cut), budget=ctx.budget) is None:
            return None, {"claim5": cut}
        ctx.report.notes.append("claim5: Menger cut left a subdivision")
        return None, {"fallback": set(b.adjacency(v).values())}
    # long cycles inside parts
    cycles: list[tuple[int, list[int]]] = []
    for idx, (part, _) in enumerate(info):
        if v in part:
            continue
        h = part
        while len(cycles) < ell:
            c = longest_cycle(h, ctx.budget)
            if c is None or len(c) < 5:
                break
            cycles.append((idx, c))
            h = h.without_edges(part.path_edges(c + [c[0]]))
    if len(cycles) >= ell:
        cyc_edges = set()
        for _, c in cycles:
            cyc_edges |= set(b.path_edges(c + [c[0]]))
        per_part = []
        for part, (p, q) in info:
            sub = part.without_edges(cyc_edges)
            count, paths, _ = max_edge_disjoint_paths(sub, p, q, ell)
            if count < ell:
                ctx.report.notes.append("claim5: too few passing paths after removing cycles")
                return None, {"fallback": set(b.adjacency(v).values())}
            per_part.append(paths)
        out = []
        for i, (_, c) in enumerate(cycles[:ell]):
            es = set(b.path_edges(c + [c[0]]))
            for paths in per_part:
                es |= set(b.path_edges(paths[i]))
            w = finder(b.edge_subgraph(sorted(es)), budget=ctx.budget)
            if w is None:
                ctx.report.notes.append("claim5: cycle pair without a subdivision")
                return None, {"fallback": set(b.adjacency(v).values())}
            out.append(w)
        return out, {}
    # fewer than ell long cycles: cut a thin theta in each part that has one
    cut: set[int] = set()
    for idx, (part, _) in enumerate(info):
        n = sum(1 for j, _ in cycles if j == idx)
        if n == 0:
            continue
        cls = classify_ladder_free(part, ctx.budget)
        if cls.chain is None:
            ctx.report.notes.append("claim5: part is not a chain of short thetas")
            return None, {"fallback": set(b.adjacency(v).values())}
        thin = min(cls.chain.blocks, key=lambda blk: blk.r)
        if thin.r >= n + 2:
            ctx.report.notes.append("claim5: no thin theta in part")
            return None, {"fallback": set(b.adjacency(v).values())}
        x = thin.ends[0]
        cut |= {part.edge_id(*e) for e in thin.edges if x in e}
    if finder(b.without_edges(cut), budget=ctx.budget) is None:
        return None, {"claim5": cut}
    ctx.report.notes.append("claim5: thin-theta cut left a subdivision")
    return None, {"fallback": set(b.adjacency(v).values())}


# -- one hitting vertex -------------------------------------------------------------


def _core_block(b: Graph, v: int, k: int, ctx: _Ctx) -> tuple[Optional[list[SubdivisionWitness]], Tagged]:
    pattern = ctx.pattern
    finder = _finder(pattern)
    if b.order < MIN_ORDER[pattern] or b.degree(v) < 2:
        return None, {}
    pa = preleaf_tree(b, v)
    if pa.cap_hit:
        ctx.report.notes.append("preleaf tree: exchange cap reached")
    # many preleaves: ladders straight from the tree
    if len(pa.preleaves) >= 6 * k:
        return claim1_ladders(b, pa, k, pattern), {}
    tagged: Tagged = {}
    cur = b
    t = pa.tree
    nv = set(b.neighbors(v))
    leaves = {x for x in t.vertices() if t.degree(x) == 1}
    # neighbours of v inside the leafless tree
    inner = t.without_vertices(leaves)
    if inner.order:
        if inner.order == 1:
            ends, segs = set(inner.vertices()), []
        else:
            segs = tree_segments(inner)
            ends = {s[0] for s in segs} | {s[-1] for s in segs}
        groups = []
        for s in segs:
            hits = [x for x in s[1:-1] if x in nv]
            if len(hits) >= 5:
                groups.append((s, len(hits) // 5))
        if sum(n for _, n in groups) >= k:
            out: list[SubdivisionWitness] = []
            for s, n in groups:
                out += claim2_ladders(s, v, nv, min(n, k - len(out)), pattern)
                if len(out) >= k:
                    return out, {}
        removed = _v_edges(cur, v, ends) | _v_edges(cur, v, inner.vertices())
        tagged["claim3"] = removed
        cur = cur.without_edges(removed)
    # leaves with other neighbours, and leaves of small preleaves
    drop = set()
    for ell in leaves:
        (w,) = t.neighbors(ell)
        if pa.orders.get(w, 0) <= 3 or set(cur.neighbors(ell)) - {v, w}:
            drop.add(ell)
    removed = _v_edges(cur, v, drop)
    tagged["claim4"] = removed
    cur = cur.without_edges(removed)
    groups_by_w: dict[int, list[int]] = {}
    for ell in sorted(leaves - drop):
        if cur.has_edge(v, ell):
            (w,) = t.neighbors(ell)
            groups_by_w.setdefault(w, []).append(ell)
    if groups_by_w:
        h, copies = _split_hub(cur, v, groups_by_w)
        if pattern == "ladder3":
            out_am = am_tree_solve(h, set(copies), 3, k, ctx.budget, complete=False)
            if out_am.kind == "packing":
                return [_ladder_from_am_tree(tr, copies, v, pattern) for tr in out_am.trees], {}
        else:
            out_am = am_tree_solve(h, set(copies), 2, 2 * k, ctx.budget, complete=False)
            if out_am.kind == "packing":
                houses = _houses_from_paths(cur, out_am.trees, copies, groups_by_w, v, k)
                if len(houses) >= k:
                    return houses[:k], {}
                ctx.report.notes.append("house core: paths did not pair into enough houses")
                out_am = None
        if out_am is None:
            fb = set(cur.adjacency(v).values())
            tagged["fallback"] = fb
            cur = cur.without_edges(fb)
        else:
            tagged["am_tree"] = set(out_am.hitting)
            cur = cur.without_edges(out_am.hitting)
    # two-preleaf blocks through v
    if pattern == "ladder3":
        live = [blk for blk in blocks(cur)[0] if v in blk and finder(blk, budget=ctx.budget) is not None]
        ws, hit = _combine(live, k, lambda blk, ell: claim5(blk, v, ell, ctx))
        if ws is not None:
            return ws, {}
        _merge(tagged, hit)
        cur = cur.without_edges(_flat(hit))
    left = finder(cur, budget=ctx.budget)
    if left is not None:
        if v not in left.vertex_set():
            raise AssumptionViolated("a subdivision avoids the hitting vertex")
        ctx.report.notes.append("core: hitting set completed with edges at v")
        fb = set(cur.adjacency(v).values())
        tagged.setdefault("fallback", set()).update(fb)
    return None, tagged


def _core(g: Graph, v: int, k: int, ctx: _Ctx) -> tuple[Optional[list[SubdivisionWitness]], Tagged]:
    parts = [blk for blk in blocks(g)[0] if v in blk and blk.order >= MIN_ORDER[ctx.pattern]]
    return _combine(parts, k, lambda blk, kk: _core_block(blk, v, kk, ctx))


def solve_core_1v(g: Graph, v: int, k: int, pattern: str = "ladder3", budget=None) -> tuple[EppCertificate, SolveReport]:
    """Solve on a graph where every subdivision passes through v."""
    budget = as_budget(budget)
    report = SolveReport(pattern, k, bound=18 * k * k + 111 * k)
    ctx = _Ctx(pattern, budget, report)
    if k == 0:
        return _finish(g, k, pattern, [], {}, report, budget, complete=False)
    ws, tagged = _core(g, v, k, ctx)
    return _finish(g, k, pattern, ws, tagged, report, budget, complete=False)


# -- the full pipeline --------------------------------------------------------------


def _greedy_vertex_disjoint(g: Graph, pattern: str, budget: Budget) -> list[SubdivisionWitness]:
    finder = _finder(pattern)
    found = []
    used: set[int] = set()
    while True:
        w = finder(g.without_vertices(used), budget=budget)
        if w is None:
            return found
        found.append(w)
        used |= w.vertex_set()


def _solve_block(b: Graph, k: int, ctx: _Ctx) -> tuple[Optional[list[SubdivisionWitness]], Tagged]:
    pattern = ctx.pattern
    packed: list[SubdivisionWitness] = []
    tagged: Tagged = {"strip": set()}
    cur = b
    # small subdivisions are taken out whole
    while len(packed) < k:
        w = find_small(cur, pattern, SMALL_EDGES, ctx.budget)
        if w is None:
            break
        es = w.edge_ids(cur)
        packed.append(w)
        tagged["strip"] |= es
        cur = cur.without_edges(es)
    need = k - len(packed)
    if need == 0:
        return packed, {}
    greedy = _greedy_vertex_disjoint(cur, pattern, ctx.budget)
    if len(greedy) >= need:
        return packed + greedy[:need], {}
    hubs = sorted(set().union(*(w.vertex_set() for w in greedy))) if greedy else []
    ctx.report.vertex_hitting.extend(x for x in hubs if x not in ctx.report.vertex_hitting)
    for i, y in enumerate(hubs):
        h = cur.without_vertices(hubs[i + 1:])
        ws, hit = _core(h, y, need, ctx)
        if ws is not None:
            return packed + ws, {}
        _merge(tagged, hit)
        cur = cur.without_edges(_flat(hit))
    return None, tagged


def minimize_hitting(g: Graph, pattern: str, X, budget=None) -> set[int]:
    """Drop edges from a hitting set while it still hits everything."""
    finder = _finder(pattern)
    keep = set(X)
    for e in sorted(X, reverse=True):
        trial = keep - {e}
        if finder(g.without_edges(trial), budget=budget) is None:
            keep = trial
    return keep


def _finish(g, k, pattern, ws, tagged, report: SolveReport, budget: Budget, complete: bool):
    if ws is not None:
        cert = EppCertificate("packing", pattern, witnesses=list(ws))
    else:
        raw = _flat(tagged)
        exact = None
        if complete:
            try:
                exact = exact_packing(g, pattern, k, Budget(budget.limit))
            except BudgetExceeded:
                report.notes.append("completion search exhausted its budget")
        if exact is not None:
            cert = EppCertificate("packing", pattern, witnesses=exact)
            report.method = "exhaustive"
        else:
            X = minimize_hitting(g, pattern, raw, budget)
            cert = EppCertificate("hitting", pattern, hitting=frozenset(X))
            report.raw_size = len(raw)
            seen: set[int] = set()
            for phase in PHASES:
                new = (tagged.get(phase, set()) & X) - seen
                report.tallies[phase] = len(new)
                seen |= new
    report.branch = cert.kind
    report.size = len(cert.hitting)
    report.budget_used = budget.used
    if not verify_certificate(g, k, cert):
        raise InvariantViolation(f"{cert.kind} certificate failed verification")
    return cert, report


def _solve(g: Graph, k: int, pattern: str, budget) -> tuple[EppCertificate, SolveReport]:
    if pattern not in PATTERNS:
        raise ValueError(f"unknown pattern {pattern!r}")
    if k < 0:
        raise ValueError("k must be non-negative")
    budget = as_budget(budget)
    report = SolveReport(pattern, k)
    if k == 0:
        return _finish(g, k, pattern, [], {}, report, budget, complete=False)
    ctx = _Ctx(pattern, budget, report)
    parts = [blk for blk in blocks(g)[0] if blk.order >= MIN_ORDER[pattern]]
    ws, tagged = _combine(parts, k, lambda blk, kk: _solve_block(blk, kk, ctx))
    return _finish(g, k, pattern, ws, tagged, report, budget, complete=True)


def solve_ladder3(g: Graph, k: int, budget=None) -> tuple[EppCertificate, SolveReport]:
    """k edge-disjoint 3-rung ladder subdivisions or an edge hitting set."""
    return _solve(g, k, "ladder3", budget)


def solve_house(g: Graph, k: int, budget=None) -> tuple[EppCertificate, SolveReport]:
    """k edge-disjoint house subdivisions or an edge hitting set."""
    return _solve(g, k, "house", budget)


# -- exhaustive packing ------------------------------------------------------------


def all_thetas(g: Graph, pattern: str, budget=None) -> list[tuple[frozenset[int], int, int, tuple]]:
    """Every subdivision of the pattern as (edge set, x, y, paths)."""
    budget = as_budget(budget)
    mins = sorted(MINS[pattern], reverse=True)
    seen = {}
    for adj in _block_maps(g, (), 3):
        cands = sorted(v for v in adj if len(adj[v]) >= 3)
        for i, x in enumerate(cands):
            for y in cands[i + 1:]:
                paths = list(simple_paths(adj, x, y, (), 1, budget))
                # interiors as bitmasks over vertex ids
                inner = [sum(1 << z for z in p[1:-1]) for p in paths]
                lens = [len(p) - 1 for p in paths]
                n = len(paths)
                for a in range(n):
                    for c in range(a + 1, n):
                        if inner[a] & inner[c]:
                            continue
                        ac = inner[a] | inner[c]
                        for d in range(c + 1, n):
                            if inner[d] & ac:
                                continue
                            budget.tick()
                            ls = sorted((lens[a], lens[c], lens[d]), reverse=True)
                            if ls[0] < mins[0] or ls[1] < mins[1] or ls[2] < mins[2]:
                                continue
                            trio = (paths[a], paths[c], paths[d])
                            es = frozenset(e for p in trio for e in g.path_edges(p))
                            seen.setdefault(es, (x, y, trio))
    return [(es, x, y, trio) for es, (x, y, trio) in sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]


def _cycle_rank(g: Graph) -> int:
    return g.size - g.order + len(components(g))


def exact_packing(g: Graph, pattern: str, k: int, budget=None) -> Optional[list[SubdivisionWitness]]:
    """k edge-disjoint subdivisions by exhaustive search, or None.

    Branches on the free edge lying in the fewest remaining subdivisions:
    either one of those is in the packing or the edge is dropped.
    Edge-disjoint subgraphs have independent cycle spaces and every
    subdivision has cycle rank 2, which gives a quick upper bound.
    """
    budget = as_budget(budget)
    if k <= 0:
        return []
    floor = sum(MINS[pattern])
    # each member has two branch vertices using three of their edges
    if g.size < k * floor or _cycle_rank(g) < 2 * k or sum(g.degree(x) // 3 for x in g.vertices()) < 2 * k:
        return None
    if _finder(pattern)(g, budget=budget) is None:
        return None
    items = all_thetas(g, pattern, budget)
    eids = g.edge_ids()
    pos = {e: i for i, e in enumerate(eids)}
    masks = [sum(1 << pos[e] for e in it[0]) for it in items]
    chosen: list[int] = []
    dead: set[tuple[int, int]] = set()

    def rec(alive: list[int], blocked: int, need: int) -> bool:
        if need == 0:
            return True
        if len(alive) < need or (blocked, need) in dead:
            return False
        budget.tick(len(alive))
        if need == 1:
            chosen.append(alive[0])
            return True
        count = [0] * len(eids)
        for i in alive:
            m = masks[i]
            while m:
                low = m & -m
                count[low.bit_length() - 1] += 1
                m ^= low
        # cycle rank of what is left bounds the packing
        live_edges = 0
        for i in alive:
            live_edges |= masks[i]
        if need * floor > bin(live_edges).count("1"):
            dead.add((blocked, need))
            return False
        e = min((c, j) for j, c in enumerate(count) if c)[1]
        bit = 1 << e
        for i in alive:
            if masks[i] & bit:
                m = masks[i]
                chosen.append(i)
                if rec([j for j in alive if not masks[j] & m], blocked | m, need - 1):
                    return True
                chosen.pop()
        if rec([j for j in alive if not masks[j] & bit], blocked | bit, need):
            return True
        dead.add((blocked, need))
        return False

    if not rec(list(range(len(items))), 0, k):
        return None
    return [_theta(pattern, items[i][1], items[i][2], items[i][3]) for i in chosen]


# -- verification -------------------------------------------------------------------


def _house_search(g: Graph, budget: Budget) -> bool:
    adj = adjacency_map(g)
    order = [("p3", "x", "y", 3), ("p2", "x", "y", 2), ("p1", "x", "y", 1)]
    return embed_pattern(adj, order, {}, budget, {"x": 3, "y": 3}) is not None


def verify_certificate(g: Graph, k: int, cert: EppCertificate, budget=None) -> bool:
    """Check a certificate using the pinned-path engine only."""
    budget = as_budget(budget)
    if cert.pattern not in PATTERNS:
        return False
    if cert.kind == "packing":
        if len(cert.witnesses) < k:
            return False
        seen: set[int] = set()
        for w in cert.witnesses:
            if cert.pattern == "ladder3" and not (w.pattern == "ladder" and w.l == 3):
                return False
            if cert.pattern == "house" and w.pattern not in ("house", "ladder"):
                return False
            if not validate_witness(g, w):
                return False
            es = w.edge_ids(g)
            if es & seen:
                return False
            seen |= es
        return True
    if cert.kind == "hitting":
        if not all(g.has_edge_id(e) for e in cert.hitting):
            return False
        h = g.without_edges(cert.hitting)
        if cert.pattern == "ladder3":
            return find_ladder_naive(h, 3, budget=budget) is None
        return not _house_search(h, budget)
    return False
