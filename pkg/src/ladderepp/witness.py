"""Embedding witnesses for the fixed patterns, and their validator.

A witness maps every branch vertex of a pattern to a host vertex and every
pattern edge to a host path. ``validate_witness`` re-checks a witness from
scratch against the host graph; it deliberately uses nothing but adjacency
lookups so it can serve as an independent check on every finder and
constructor in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph

PATTERNS = ("ladder", "house", "theta", "xwing", "linkage")


def ladder_edges(l: int) -> list[tuple[str, str, str, int]]:
    """Pattern edges of the elementary ladder with ``l`` rungs.

    Each entry is (key, end1, end2, min_length). Rungs come first, then the
    u-stringer and v-stringer segments.
    """
    out = [(f"r{i}", f"u{i}", f"v{i}", 1) for i in range(1, l + 1)]
    out += [(f"su{i}", f"u{i}", f"u{i + 1}", 1) for i in range(1, l)]
    out += [(f"sv{i}", f"v{i}", f"v{i + 1}", 1) for i in range(1, l)]
    return out


HOUSE_EDGES = [("p1", "x", "y", 1), ("p2", "x", "y", 2), ("p3", "x", "y", 3)]

XWING_ATTACH = [("ta", "a"), ("tb", "b"), ("tc", "c"), ("td", "d")]


def pattern_edges(pattern: str, l: int = 0) -> list[tuple[str, str, str, int]]:
    if pattern == "ladder":
        return ladder_edges(l)
    if pattern == "house":
        return list(HOUSE_EDGES)
    if pattern == "xwing":
        return ladder_edges(3)
    if pattern == "linkage":
        return [("ab", "a", "b", 1), ("cd", "c", "d", 1)]
    if pattern == "theta":
        return [(f"p{i}", "x", "y", 1) for i in range(1, l + 1)]
    raise ValueError(f"unknown pattern {pattern!r}")


@dataclass
class SubdivisionWitness:
    """Branch map plus one host path per pattern edge.

    For X-wings the ladder part is stored as for ``ladder`` with l=3, the
    terminals live in ``branch_map`` under a, b, c, d, and the four
    attachment paths sit in ``attach`` keyed ta/tb/tc/td, each running from
    a rung endpoint to its terminal (length zero allowed).
    """

    pattern: str
    branch_map: dict[str, int]
    paths: dict[str, tuple[int, ...]]
    l: int = 0
    attach: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def all_paths(self) -> list[tuple[int, ...]]:
        return list(self.paths.values()) + list(self.attach.values())

    def vertex_set(self) -> set[int]:
        vs = set(self.branch_map.values())
        for p in self.all_paths():
            vs.update(p)
        return vs

    def edge_pairs(self) -> set[tuple[int, int]]:
        out = set()
        for p in self.all_paths():
            for x, y in zip(p, p[1:]):
                out.add((x, y) if x < y else (y, x))
        return out

    def edge_ids(self, g: Graph) -> frozenset[int]:
        return frozenset(g.edge_id(x, y) for x, y in self.edge_pairs())

    @property
    def num_edges(self) -> int:
        return sum(len(p) - 1 for p in self.all_paths())

    def rung_paths(self) -> list[tuple[int, ...]]:
        return [self.paths[f"r{i}"] for i in range(1, self.l + 1)]

    def theta_view(self) -> tuple[int, int, list[tuple[int, ...]]]:
        """For a 3-rung ladder: the two degree-3 vertices and the three paths
        between them (middle rung first)."""
        if self.pattern not in ("ladder", "xwing") or self.l != 3:
            if self.pattern in ("house", "theta"):
                return self.branch_map["x"], self.branch_map["y"], list(self.paths.values())
            raise ValueError("theta view needs a 3-rung ladder")
        p = self.paths
        x, y = self.branch_map["u2"], self.branch_map["v2"]
        left = tuple(reversed(p["su1"])) + p["r1"][1:] + p["sv1"][1:]
        right = p["su2"] + tuple(reversed(p["r3"]))[1:] + tuple(reversed(p["sv2"]))[1:]
        return x, y, [p["r2"], left, right]

    def to_json(self) -> dict:
        keys = [k for k, *_ in pattern_edges(self.pattern, self.l)]
        out = {
            "pattern": self.pattern,
            "l": self.l,
            "branch_map": dict(sorted(self.branch_map.items())),
            "edges": keys,
            "paths": [list(self.paths[k]) for k in keys],
        }
        if self.attach:
            out["attach"] = {k: list(v) for k, v in sorted(self.attach.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> SubdivisionWitness:
        pattern = data["pattern"]
        l = int(data.get("l", 0))
        keys = data.get("edges") or [k for k, *_ in pattern_edges(pattern, l)]
        paths = {k: tuple(p) for k, p in zip(keys, data["paths"])}
        attach = {k: tuple(v) for k, v in data.get("attach", {}).items()}
        return cls(pattern, {k: int(v) for k, v in data["branch_map"].items()}, paths, l, attach)


@dataclass
class LinkageWitness:
    path_ab: tuple[int, ...]
    path_cd: tuple[int, ...]

    def edge_ids(self, g: Graph) -> frozenset[int]:
        out = set()
        for p in (self.path_ab, self.path_cd):
            out.update(g.edge_id(x, y) for x, y in zip(p, p[1:]))
        return frozenset(out)

    def to_json(self) -> dict:
        return {"pattern": "linkage", "paths": [list(self.path_ab), list(self.path_cd)]}


def make_ladder(rungs, u_segments, v_segments) -> SubdivisionWitness:
    """Assemble a ladder witness from rung paths (u_i -> v_i) and stringer
    segments (u_i -> u_{i+1}, v_i -> v_{i+1})."""
    l = len(rungs)
    branch = {}
    paths = {}
    for i, r in enumerate(rungs, 1):
        branch[f"u{i}"] = r[0]
        branch[f"v{i}"] = r[-1]
        paths[f"r{i}"] = tuple(r)
    for i, s in enumerate(u_segments, 1):
        paths[f"su{i}"] = tuple(s)
    for i, s in enumerate(v_segments, 1):
        paths[f"sv{i}"] = tuple(s)
    return SubdivisionWitness("ladder", branch, paths, l)


def ladder_from_stringers(rung_ends: list[tuple[int, int]], su: list[int], sv: list[int], rung_paths=None) -> SubdivisionWitness:
    """Cut two full stringer paths at the rung endpoints.

    ``su`` must visit u_1..u_l in order and ``sv`` v_1..v_l; ``rung_paths``
    defaults to single edges.
    """
    def cut(stringer, marks):
        pos = [stringer.index(m) for m in marks]
        if pos != sorted(pos):
            raise ValueError("rung endpoints out of order along stringer")
        return [tuple(stringer[p:q + 1]) for p, q in zip(pos, pos[1:])]

    us = [u for u, _ in rung_ends]
    vs = [v for _, v in rung_ends]
    rungs = rung_paths or [(u, v) for u, v in rung_ends]
    return make_ladder(rungs, cut(su, us), cut(sv, vs))


def ladder3_from_theta(x: int, y: int, paths) -> SubdivisionWitness:
    """Turn three internally disjoint x-y paths, two of length >= 3, into a
    3-rung ladder witness with x, y as the middle rung's ends."""
    ps = sorted((tuple(p) for p in paths), key=len)
    rung, left, right = ps[0], ps[1], ps[2]
    if len(left) < 4:
        raise ValueError("ladder needs two x-y paths of length at least 3")
    for p in (rung, left, right):
        if p[0] != x:
            raise ValueError("paths must start at x")
    return make_ladder(
        [left[1:-1], rung, right[1:-1]],
        [left[1::-1], right[:2]],
        [left[-2:], right[-1:-3:-1]],
    )


def theta_witness(pattern: str, x: int, y: int, paths) -> SubdivisionWitness:
    ps = [tuple(p) for p in paths]
    if pattern == "house":
        ps.sort(key=len)
    keys = [f"p{i}" for i in range(1, len(ps) + 1)]
    return SubdivisionWitness(pattern, {"x": x, "y": y}, dict(zip(keys, ps)), len(ps) if pattern == "theta" else 0)


# -- validation -------------------------------------------------------------


def _check_path(g: Graph, p, forbidden_pairs) -> Optional[str]:
    if len(p) == 0:
        return "empty path"
    if len(set(p)) != len(p):
        return f"path {p} repeats a vertex"
    for v in p:
        if v not in g:
            return f"vertex {v} not in host"
    for x, y in zip(p, p[1:]):
        if not g.has_edge(x, y):
            return f"{x}-{y} is not a host edge"
        if (min(x, y), max(x, y)) in forbidden_pairs:
            return f"{x}-{y} is forbidden"
    return None


def witness_problems(g: Graph, w: SubdivisionWitness, forbidden=()) -> list[str]:
    """Every violated witness invariant, as human-readable strings."""
    forbidden_pairs = {g.endpoints(e) for e in forbidden if g.has_edge_id(e)}
    problems = []
    if w.pattern == "linkage":
        shape = [("ab", "a", "b", 0), ("cd", "c", "d", 0)]
    elif w.pattern == "xwing":
        shape = ladder_edges(3)
    elif w.pattern == "ladder":
        if w.l < 1:
            return ["ladder needs l >= 1"]
        shape = ladder_edges(w.l)
    elif w.pattern == "house":
        shape = list(HOUSE_EDGES)
    elif w.pattern == "theta":
        shape = [(f"p{i}", "x", "y", 1) for i in range(1, w.l + 1)]
    else:
        return [f"unknown pattern {w.pattern}"]

    if set(w.paths) != {k for k, *_ in shape}:
        problems.append(f"path keys {sorted(w.paths)} do not match the pattern")
        return problems

    pattern_vertices = sorted({x for _, a, b, _ in shape for x in (a, b)})
    for pv in pattern_vertices:
        if pv not in w.branch_map:
            problems.append(f"branch vertex {pv} unmapped")
    if problems:
        return problems
    images = [w.branch_map[pv] for pv in pattern_vertices]
    if len(set(images)) != len(images):
        problems.append("branch images are not distinct")

    interiors: list[int] = []
    seen_edges: set[tuple[int, int]] = set()

    def take(p, label):
        err = _check_path(g, p, forbidden_pairs)
        if err:
            problems.append(f"{label}: {err}")
            return
        interiors.extend(p[1:-1])
        for x, y in zip(p, p[1:]):
            e = (min(x, y), max(x, y))
            if e in seen_edges:
                problems.append(f"{label}: edge {e} used twice")
            seen_edges.add(e)

    for key, a, b, lo in shape:
        p = w.paths[key]
        ends = {p[0], p[-1]}
        if ends != {w.branch_map[a], w.branch_map[b]}:
            problems.append(f"{key}: endpoints {p[0]},{p[-1]} do not match {a},{b}")
        if len(p) - 1 < max(lo, 1):
            problems.append(f"{key}: length {len(p) - 1} below minimum {max(lo, 1)}")
        take(p, key)

    branch_images = set(images)
    if w.pattern == "xwing":
        if set(w.attach) != {k for k, _ in XWING_ATTACH}:
            problems.append("x-wing needs attachment paths ta, tb, tc, td")
            return problems
        terminals = {}
        for key, t in XWING_ATTACH:
            if t not in w.branch_map:
                problems.append(f"terminal {t} unmapped")
                return problems
            terminals[t] = w.branch_map[t]
        if len(set(terminals.values())) != 4:
            problems.append("terminals are not distinct")
        first = {w.branch_map["u1"], w.branch_map["v1"]}
        last = {w.branch_map["u3"], w.branch_map["v3"]}
        starts_ab = {w.attach["ta"][0], w.attach["tb"][0]}
        starts_cd = {w.attach["tc"][0], w.attach["td"][0]}
        if starts_ab != first:
            problems.append("a/b attachments must start at the two ends of the first rung")
        if starts_cd != last:
            problems.append("c/d attachments must start at the two ends of the last rung")
        for key, t in XWING_ATTACH:
            p = w.attach[key]
            if p[-1] != terminals[t]:
                problems.append(f"{key}: does not end at terminal {t}")
            err = _check_path(g, p, forbidden_pairs)
            if err:
                problems.append(f"{key}: {err}")
                continue
            # attachment interiors and the terminal end must avoid the ladder
            tail = p[1:]
            for v in tail:
                if v in branch_images:
                    problems.append(f"{key}: meets a ladder branch vertex")
            interiors.extend(tail)
            for x, y in zip(p, p[1:]):
                e = (min(x, y), max(x, y))
                if e in seen_edges:
                    problems.append(f"{key}: edge {e} used twice")
                seen_edges.add(e)

    if len(set(interiors)) != len(interiors):
        problems.append("paths are not internally disjoint")
    if set(interiors) & branch_images:
        problems.append("a path interior passes through a branch vertex")
    if w.pattern == "linkage":
        pa, pc = w.paths["ab"], w.paths["cd"]
        if set(pa) & set(pc):
            problems.append("linkage paths share a vertex")
    return problems


def validate_witness(g: Graph, w: SubdivisionWitness, forbidden=()) -> bool:
    return not witness_problems(g, w, forbidden)


def validate_linkage(g: Graph, lw: LinkageWitness, a: int, b: int, c: int, d: int, forbidden=()) -> bool:
    w = SubdivisionWitness("linkage", {"a": a, "b": b, "c": c, "d": d}, {"ab": lw.path_ab, "cd": lw.path_cd})
    if lw.path_ab[0] != a or lw.path_cd[0] != c:
        return False
    return validate_witness(g, w, forbidden)
