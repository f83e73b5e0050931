"""Condensed walls, the counterexample graph G*, and explicit ladder embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, GraphError, bfs_path
from .witness import SubdivisionWitness, ladder_from_stringers, make_ladder


class InvalidParams(GraphError, ValueError):
    pass


class InvalidSize(InvalidParams):
    pass


class InvalidChunk(InvalidParams):
    pass


class NotFound(GraphError):
    """A constructive embedding failed; inside its stated preconditions this
    would contradict the construction it follows."""


@dataclass
class CondensedWall:
    graph: Graph
    r: int
    a: int
    b: int
    z: list[int]
    u: dict[tuple[int, int], int]
    layers: dict[int, set[int]]

    @property
    def c(self) -> int:
        return self.z[0]

    @property
    def d(self) -> int:
        return self.z[-1]

    def row(self, j: int) -> list[int]:
        return [self.u[j, i] for i in range(1, 2 * self.r + 1)]

    def layer_edges(self, j: int) -> set[int]:
        vs = self.layers[j]
        return {e for e, (x, y) in self.graph.edge_items() if x in vs and y in vs}

    def attachment_edges(self, j: int) -> set[int]:
        g = self.graph
        return {g.edge_id(self.a, self.u[j, 1]), g.edge_id(self.b, self.u[j, 2 * self.r])}

    def labels(self) -> dict:
        out = {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "z": list(self.z)}
        for j in range(1, self.r + 1):
            out[f"u:{j}"] = self.row(j)
        return out

    @classmethod
    def from_labels(cls, g: Graph, labels: dict) -> CondensedWall:
        z = list(labels["z"])
        r = len(z) - 1
        u = {}
        layers = {}
        for j in range(1, r + 1):
            row = labels[f"u:{j}"]
            for i, v in enumerate(row, 1):
                u[j, i] = v
            layers[j] = set(row) | {z[j - 1], z[j]}
        return cls(g, r, labels["a"], labels["b"], z, u, layers)


def build_condensed_wall(r: int, graph: Optional[Graph] = None) -> CondensedWall:
    """Condensed wall of size r; ids are a, b, z_0..z_r, then u row by row.

    When ``graph`` is given the wall is added to it with fresh ids.
    """
    if r < 1:
        raise InvalidSize(f"wall size must be at least 1, got {r}")
    g = graph if graph is not None else Graph()
    a = g.add_vertex()
    b = g.add_vertex()
    z = [g.add_vertex() for _ in range(r + 1)]
    u = {}
    for j in range(1, r + 1):
        for i in range(1, 2 * r + 1):
            u[j, i] = g.add_vertex()
    for j in range(1, r + 1):
        g.add_path([u[j, i] for i in range(1, 2 * r + 1)])
    for j in range(1, r + 1):
        for i in range(1, r + 1):
            g.add_edge(z[j - 1], u[j, 2 * i - 1])
            g.add_edge(z[j], u[j, 2 * i])
    for i in range(1, r + 1):
        g.add_edge(z[i - 1], z[i])
    for j in range(1, r + 1):
        g.add_edge(a, u[j, 1])
        g.add_edge(b, u[j, 2 * r])
    layers = {j: {u[j, i] for i in range(1, 2 * r + 1)} | {z[j - 1], z[j]} for j in range(1, r + 1)}
    return CondensedWall(g, r, a, b, z, u, layers)


# -- X-wing --------------------------------------------------------------------------


def _xwing_at(w: CondensedWall, p: int, bad: set[int]) -> Optional[SubdivisionWitness]:
    """Layers p and p+1 carry the ladder; z_{p-1} and z_p are routed to c and d."""
    g = w.graph
    q = p + 1
    row_p, row_q = w.row(p), w.row(q)
    zp0, zp, zq = w.z[p - 1], w.z[p], w.z[q]
    taken = {w.a, w.b} | set(row_p) | set(row_q) | {zp0, zp}
    h = g.without_edges(bad)
    to_c = bfs_path(h, [zp0], [w.c], avoid=taken)
    if to_c is None:
        return None
    if not h.has_edge(zp, zq):
        return None
    to_d = bfs_path(h, [zq], [w.d], avoid=taken | set(to_c))
    if to_d is None:
        return None
    to_d = [zp] + to_d
    if set(to_c) & set(to_d):
        return None
    branch = {"u1": w.a, "v1": w.b, "u2": row_p[0], "v2": row_p[1], "u3": zp0, "v3": zp}
    paths = {
        "r1": tuple([w.a] + row_q + [w.b]),
        "r2": (row_p[0], row_p[1]),
        "r3": (zp0, zp),
        "su1": (w.a, row_p[0]),
        "sv1": tuple([w.b] + row_p[:0:-1]),
        "su2": (row_p[0], zp0),
        "sv2": (row_p[1], zp),
    }
    attach = {"ta": (w.a,), "tb": (w.b,), "tc": tuple(to_c), "td": tuple(to_d)}
    branch.update({"a": w.a, "b": w.b, "c": w.c, "d": w.d})
    return SubdivisionWitness("xwing", branch, paths, 3, attach)


def embed_xwing(w: CondensedWall, forbidden=()) -> SubdivisionWitness:
    """X-wing on the first pair of adjacent layers untouched by ``forbidden``.

    The ladder's first rung is a, a path through layer p+1, b; its last rung
    is the jump edge z_{p-1} z_p, which is then routed to c through the
    earlier layers and to d through the jump edge z_p z_{p+1} and the
    later layers.
    """
    bad = set(forbidden)
    for p in range(1, w.r):
        clean = w.layer_edges(p) | w.layer_edges(p + 1) | w.attachment_edges(p) | w.attachment_edges(p + 1)
        if clean & bad:
            continue
        x = _xwing_at(w, p, bad)
        if x is not None:
            return x
    raise NotFound("no pair of clean adjacent layers admits an X-wing")


# -- the 13-rung ladder ------------------------------------------------------------

# Drawing coordinates: v{i}{j} is column i (0..9) of drawn row j (0..4);
# z{m} is the m-th drawn bottleneck vertex. Rungs in ladder order.
_RUNGS13 = [
    "v64-v54", "v44-z5", "v34-v24", "v14-z4", "a-v03", "v02-z3", "v12-v22",
    "v32-z2", "b-v91", "v80-z1", "v70-v60", "v50-z0", "v40-v30",
]
_STRINGERS13 = [
    "v54-v44", "v64-z5", "v44-v34", "v24-z5", "v34-z4", "v24-v14", "v14-v04",
    "a-v04", "z4-v03", "a-v02", "v03-v13", "v13-z3", "v02-v12", "z3-v22",
    "v12-z2", "v22-v32", "z2-v81", "v81-v91", "v32-v42-v52-v62-v72-v82-v92",
    "v92-b", "v91-z1", "b-v90", "v80-v90", "v80-v70", "v60-z1", "v70-z0",
    "v60-v50", "v30-z0", "v50-v40",
]


def _drawn_vertex(w: CondensedWall, name: str, chunk: int) -> int:
    if name == "a":
        return w.a
    if name == "b":
        return w.b
    if name[0] == "z":
        return w.z[5 - int(name[1:]) + 5 * chunk]
    col, row = int(name[1]), int(name[2])
    pos = col + 1 if col <= 7 else col + 1 + 2 * (w.r - 5)
    return w.u[5 - row + 5 * chunk, pos]


def _drawn_path(w: CondensedWall, chain: str, chunk: int) -> list[int]:
    names = chain.split("-")
    out = [_drawn_vertex(w, names[0], chunk)]
    for x, y in zip(names, names[1:]):
        vx, vy = _drawn_vertex(w, x, chunk), _drawn_vertex(w, y, chunk)
        if x[0] == "v" and y[0] == "v" and x[2] == y[2] and {int(x[1]), int(y[1])} == {7, 8}:
            # wider walls: walk along the row through the extra columns
            row = w.row(5 - int(x[2]) + 5 * chunk)
            i, k = row.index(vx), row.index(vy)
            step = 1 if k > i else -1
            out.extend(row[i + step:k + step:step])
        else:
            out.append(vy)
    return out


def _trace(adj: dict[int, list[int]], start: int) -> list[int]:
    path = [start]
    prev = None
    while True:
        nxt = [y for y in adj[path[-1]] if y != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def embed_ladder13(w: CondensedWall, chunk: int = 0) -> SubdivisionWitness:
    """13-rung ladder inside layers 5*chunk+1 .. 5*chunk+5 plus a and b."""
    if chunk < 0 or w.r < 5 * (chunk + 1):
        raise InvalidChunk(f"wall of size {w.r} has no chunk {chunk}")
    g = w.graph
    rungs = [_drawn_path(w, s, chunk) for s in _RUNGS13]
    strings = [_drawn_path(w, s, chunk) for s in _STRINGERS13]
    adj: dict[int, list[int]] = {}
    for p in strings:
        for x, y in zip(p, p[1:]):
            if not g.has_edge(x, y):
                raise InvalidParams(f"{x}-{y} is not a wall edge")
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
    # the stringer edges form two paths, starting at the ends of the first rung
    u_line = _trace(adj, rungs[0][0])
    v_line = _trace(adj, rungs[0][-1])
    ends = []
    for r in rungs:
        if r[0] in u_line:
            ends.append((r[0], r[-1]))
        else:
            r.reverse()
            ends.append((r[0], r[-1]))
    return ladder_from_stringers(ends, u_line, v_line, [tuple(r) for r in rungs])


def pack_ladders13(w: CondensedWall, n: int) -> list[SubdivisionWitness]:
    if n < 0 or w.r < 5 * n:
        raise InvalidParams(f"wall of size {w.r} cannot hold {n} chunks")
    return [embed_ladder13(w, i) for i in range(n)]


# -- the counterexample G* ------------------------------------------------------------


@dataclass
class CounterexampleGraph:
    graph: Graph
    r: int
    lA: int
    lC: int
    wall: CondensedWall
    # stringer vertices of the two elementary ladders, index 0 is rung 1
    ax: list[int]
    ay: list[int]
    cx: list[int]
    cy: list[int]
    # middle vertices of the r length-2 copies of each original edge
    copies: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    componentA: set[int] = field(default_factory=set)
    componentC: set[int] = field(default_factory=set)

    @property
    def l(self) -> int:
        return self.lA + 3 + self.lC

    def labels(self) -> dict:
        out = self.wall.labels()
        out.update({"A:x": self.ax, "A:y": self.ay, "C:x": self.cx, "C:y": self.cy})
        return out


def build_counterexample(r: int, lA: int, lC: int) -> CounterexampleGraph:
    if r < 2 or lA < 7 or lC < 4:
        raise InvalidParams(f"need r >= 2, lA >= 7, lC >= 4 (got r={r}, lA={lA}, lC={lC})")
    wall = build_condensed_wall(2 * r)
    g = wall.graph.copy()
    copies: dict[tuple[int, int], list[int]] = {}

    def fat_edge(x: int, y: int, side: set[int]) -> None:
        mids = []
        for _ in range(r):
            m = g.add_vertex()
            g.add_edge(x, m)
            g.add_edge(m, y)
            mids.append(m)
            side.add(m)
        copies[x, y] = mids

    def fat_ladder(l: int, side: set[int]) -> tuple[list[int], list[int]]:
        xs = [g.add_vertex() for _ in range(l)]
        ys = [g.add_vertex() for _ in range(l)]
        side.update(xs)
        side.update(ys)
        for i in range(l):
            fat_edge(xs[i], ys[i], side)
        for i in range(l - 1):
            fat_edge(xs[i], xs[i + 1], side)
            fat_edge(ys[i], ys[i + 1], side)
        return xs, ys

    comp_a: set[int] = set()
    comp_c: set[int] = set()
    ax, ay = fat_ladder(lA, comp_a)
    cx, cy = fat_ladder(lC, comp_c)
    fat_edge(ax[0], wall.a, comp_a)
    fat_edge(ay[0], wall.b, comp_a)
    fat_edge(cx[0], wall.c, comp_c)
    fat_edge(cy[0], wall.d, comp_c)
    # the wall object keeps its own graph so wall-only searches stay small
    return CounterexampleGraph(g, r, lA, lC, wall, ax, ay, cx, cy, copies, comp_a, comp_c)


def witness_ladder_l(gx: CounterexampleGraph, deleted=()) -> SubdivisionWitness:
    """An l-rung ladder in G* minus ``deleted``: the ladder of A, an X-wing in
    the wall, and the ladder of C, joined through surviving edge copies."""
    deleted = set(deleted)
    if len(deleted) > gx.r - 1:
        raise InvalidParams(f"at most r-1 = {gx.r - 1} deletions allowed")
    g = gx.graph

    def hop(x: int, y: int) -> list[int]:
        mids = gx.copies[x, y] if (x, y) in gx.copies else gx.copies[y, x]
        for m in mids:
            if g.edge_id(x, m) not in deleted and g.edge_id(m, y) not in deleted:
                return [x, m, y]
        raise NotFound(f"all copies of {x}-{y} are damaged")

    wall_ids = set(gx.wall.graph.edge_ids())
    xw = embed_xwing(gx.wall, deleted & wall_ids)
    b, p, att = xw.branch_map, xw.paths, xw.attach
    # orient the X-wing so that u1 meets a
    if att["ta"][0] != b["u1"]:
        swap = {"u": "v", "v": "u"}
        b = {(swap[k[0]] + k[1:] if k[0] in swap else k): v for k, v in b.items()}
        p = {(k[0] + swap[k[1]] + k[2:] if k[0] == "s" else k): v for k, v in p.items()}
        p.update({f"r{i}": tuple(reversed(p[f"r{i}"])) for i in (1, 2, 3)})
    far_u = "c" if att["tc"][0] == b["u3"] else "d"
    far_v = "d" if far_u == "c" else "c"

    rungs, su, sv = [], [], []
    for i in range(gx.lA - 1, -1, -1):
        rungs.append(hop(gx.ax[i], gx.ay[i]))
        if i > 0:
            su.append(hop(gx.ax[i], gx.ax[i - 1]))
            sv.append(hop(gx.ay[i], gx.ay[i - 1]))
    su.append(hop(gx.ax[0], gx.wall.a) + list(reversed(att["ta"]))[1:])
    sv.append(hop(gx.ay[0], gx.wall.b) + list(reversed(att["tb"]))[1:])
    rungs += [list(p["r1"]), list(p["r2"]), list(p["r3"])]
    su += [list(p["su1"]), list(p["su2"])]
    sv += [list(p["sv1"]), list(p["sv2"])]
    side = {"c": (gx.cx, gx.cy), "d": (gx.cy, gx.cx)}
    cu, cv = side[far_u]
    u_tail = list(att["t" + far_u])
    v_tail = list(att["t" + far_v])
    su.append(u_tail + hop(u_tail[-1], cu[0])[1:])
    sv.append(v_tail + hop(v_tail[-1], cv[0])[1:])
    for i in range(gx.lC):
        rungs.append(hop(cu[i], cv[i]))
        if i + 1 < gx.lC:
            su.append(hop(cu[i], cu[i + 1]))
            sv.append(hop(cv[i], cv[i + 1]))
    return make_ladder(rungs, su, sv)
