"""Structure of 2-connected ladder-free and house-free graphs, and tree segments.

``classify_ladder_free`` follows the longest-cycle argument: it either
exhibits a 3-rung ladder from one of the forbidden configurations around
a longest cycle C, or walks around C and assembles a circular ordering of
short thetas. Whenever the walk gets stuck it falls back to exhaustive
search, and the method used is recorded in the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graph import Graph, GraphError, InvariantViolation, is_tree, is_two_connected, longest_cycle, norm, vertex_disjoint_paths
from .patterns import find_house, find_ladder3, recognize_short_theta
from .witness import SubdivisionWitness, ladder3_from_theta, validate_witness


class NotTwoConnected(GraphError, ValueError):
    pass


class NotATree(GraphError, ValueError):
    pass


class TooSmall(GraphError, ValueError):
    pass


@dataclass
class ThetaBlock:
    ends: tuple[int, int]
    interior: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @property
    def r(self) -> int:
        x, y = self.ends
        if len(self.interior) == 2 and norm(*self.interior) in self.edges:
            return 2  # diamond
        return len(self.interior) + ((min(x, y), max(x, y)) in self.edges)

    @property
    def order(self) -> int:
        return len(self.interior)

    def to_json(self) -> dict:
        return {"ends": list(self.ends), "r": self.r, "interior": sorted(self.interior), "edges": sorted(map(list, self.edges))}


@dataclass
class ThetaChain:
    blocks: list[ThetaBlock]
    # host edge ids, so that reassembly reproduces the input exactly
    edge_ids: dict[tuple[int, int], int] = field(default_factory=dict, compare=False)

    def edge_set(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for b in self.blocks:
            out |= b.edges
        return out

    def reassemble(self) -> Graph:
        g = Graph()
        for b in self.blocks:
            for v in b.ends:
                if v not in g:
                    g.add_vertex(v)
            for v in b.interior:
                if v not in g:
                    g.add_vertex(v)
        pairs = self.edge_set()
        if pairs and pairs == set(self.edge_ids):
            for e, (u, v) in sorted((self.edge_ids[p], p) for p in pairs):
                g.add_edge(u, v, e)
        else:
            for u, v in sorted(pairs):
                g.add_edge(u, v)
        return g

    def to_json(self) -> list:
        return [b.to_json() for b in self.blocks]


@dataclass
class Classification:
    """kind is one of: ladder, house, chain, small, short_theta, cycle."""

    kind: str
    witness: Optional[SubdivisionWitness] = None
    chain: Optional[ThetaChain] = None
    short_theta: Optional[tuple[tuple[int, int], int, int]] = None
    cycle: Optional[list[int]] = None
    method: str = "proof"
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.chain is not None:
            out["chain"] = self.chain.to_json()
        if self.short_theta is not None:
            (x, y), r, order = self.short_theta
            out["short_theta"] = {"ends": [x, y], "r": r, "order": order}
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- chain checking ------------------------------------------------------------------


def _is_short_theta_between(edges: frozenset[tuple[int, int]], x: int, y: int) -> bool:
    nbrs: dict[int, set[int]] = {}
    for p, q in edges:
        nbrs.setdefault(p, set()).add(q)
        nbrs.setdefault(q, set()).add(p)
    if x not in nbrs or y not in nbrs:
        return False
    inner = [v for v in nbrs if v not in (x, y)]
    if len(inner) == 2 and len(edges) == 5:
        p, q = inner
        if q in nbrs[p]:
            return nbrs[x] == {p, q} and nbrs[y] == {p, q}
    direct = norm(x, y) in edges
    if direct + len(inner) < 1:
        return False
    return all(nbrs[w] == {x, y} for w in inner) and len(edges) == 2 * len(inner) + direct


def chain_problems(g: Graph, chain: ThetaChain) -> list[str]:
    problems = []
    bl = chain.blocks
    if len(bl) < 2:
        problems.append("a circular ordering needs at least two blocks")
    for j, b in enumerate(bl):
        nxt = bl[(j + 1) % len(bl)]
        if b.ends[1] != nxt.ends[0]:
            problems.append(f"block {j} does not end where block {j + 1} starts")
        if not _is_short_theta_between(b.edges, *b.ends):
            problems.append(f"block {j} is not a short theta between its ends")
    seen: set[tuple[int, int]] = set()
    for b in bl:
        if seen & b.edges:
            problems.append("blocks share an edge")
        seen |= b.edges
    if seen != set(g.edges()):
        problems.append("blocks do not reassemble the graph")
    ends = [b.ends[0] for b in bl]
    if len(set(ends)) != len(ends):
        problems.append("an endvertex repeats around the ordering")
    inner: list[int] = []
    for b in bl:
        inner.extend(b.interior)
    if len(set(inner)) != len(inner) or set(inner) & set(ends):
        problems.append("interiors overlap")
    return problems


def _block(ends, interior, edges) -> ThetaBlock:
    return ThetaBlock(tuple(ends), frozenset(interior), frozenset(norm(*e) for e in edges))


# -- brute-force chain recognition ------------------------------------------------------


def find_chain_bruteforce(g: Graph) -> Optional[ThetaChain]:
    """Circular ordering of short thetas by trying every endvertex set.

    For a candidate set S every component of G - S must be a single vertex
    with exactly two neighbours in S, or an adjacent pair forming a diamond
    with two vertices of S. Grouping these units by their pair of
    S-vertices, together with edges inside S, gives the blocks; the blocks
    must form one cycle through S.
    """
    vs = g.vertices()
    for size in range(2, len(vs) + 1):
        for S in combinations(vs, size):
            chain = _chain_for(g, set(S))
            if chain is not None:
                return chain
    return None


def _gather(x: int, y: int, units) -> tuple[set[int], set[tuple[int, int]]]:
    interior: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for u in units:
        if u[0] == "e":
            edges.add(norm(x, y))
        elif u[0] == "v":
            interior.add(u[1])
            edges |= {norm(x, u[1]), norm(u[1], y)}
        else:
            _, p, q = u
            interior |= {p, q}
            edges |= {norm(x, p), norm(x, q), norm(y, p), norm(y, q), norm(p, q)}
    return interior, edges


def _chain_for(g: Graph, S: set[int]) -> Optional[ThetaChain]:
    groups: dict[tuple[int, int], list] = {}
    done: set[int] = set()
    for v in g.vertices():
        if v in S or v in done:
            continue
        out = [w for w in g.neighbors(v) if w in S]
        rest = [w for w in g.neighbors(v) if w not in S]
        if not rest:
            if len(out) != 2:
                return None
            groups.setdefault(norm(*out), []).append(("v", v))
            done.add(v)
            continue
        if len(rest) != 1 or len(out) != 2:
            return None
        w = rest[0]
        w_out = [x for x in g.neighbors(w) if x in S]
        w_rest = [x for x in g.neighbors(w) if x not in S]
        if w_rest != [v] or sorted(w_out) != sorted(out):
            return None
        groups.setdefault(norm(*out), []).append(("d", v, w))
        done |= {v, w}
    for x, y in g.edges():
        if x in S and y in S:
            groups.setdefault((x, y), []).append(("e",))
    if len(S) == 2:
        # a single pair: split its units into two blocks
        if len(groups) != 1:
            return None
        (x, y), units = next(iter(groups.items()))
        diamonds = [u for u in units if u[0] == "d"]
        others = [u for u in units if u[0] != "d"]
        if len(diamonds) == 2 and not others:
            parts = [diamonds[:1], diamonds[1:]]
        elif len(diamonds) == 1 and others:
            parts = [diamonds, others]
        elif not diamonds and len(others) >= 2:
            parts = [others[:1], others[1:]]
        else:
            return None
        (i1, e1), (i2, e2) = (_gather(x, y, p) for p in parts)
        chain = ThetaChain([_block((x, y), i1, e1), _block((y, x), i2, e2)])
        return None if chain_problems(g, chain) else _keyed(g, chain)
    blocks: list[tuple[tuple[int, int], set[int], set[tuple[int, int]]]] = []
    for (x, y), units in sorted(groups.items()):
        if any(u[0] == "d" for u in units) and len(units) > 1:
            return None
        interior, edges = _gather(x, y, units)
        blocks.append(((x, y), interior, edges))
    # the pairs must form a single cycle through S
    deg: dict[int, list[int]] = {v: [] for v in S}
    for idx, ((x, y), _, _) in enumerate(blocks):
        deg[x].append(idx)
        deg[y].append(idx)
    if any(len(ix) != 2 for ix in deg.values()):
        return None
    start = min(S)
    order = []
    cur = start
    prev_block = None
    while True:
        nxt = [i for i in deg[cur] if i != prev_block][0] if prev_block is not None else deg[cur][0]
        (x, y), interior, edges = blocks[nxt]
        other = y if x == cur else x
        order.append(_block((cur, other), interior, edges))
        prev_block = nxt
        cur = other
        if cur == start:
            break
    if len(order) != len(blocks):
        return None
    chain = ThetaChain(order)
    return None if chain_problems(g, chain) else _keyed(g, chain)


# -- proof-first classifier ----------------------------------------------------------


def _arcs(cycle: list[int], i: int, j: int) -> tuple[list[int], list[int]]:
    """The two arcs of the cycle from position i to position j."""
    n = len(cycle)
    fwd = [cycle[(i + s) % n] for s in range((j - i) % n + 1)]
    back = [cycle[(i - s) % n] for s in range((i - j) % n + 1)]
    return fwd, back


def _theta_ladder(g: Graph, x: int, y: int, paths) -> Optional[SubdivisionWitness]:
    paths = [list(p) if p[0] == x else list(reversed(p)) for p in paths]
    if sorted(len(p) - 1 for p in paths)[1] < 3:
        return None
    w = ladder3_from_theta(x, y, paths)
    return w if validate_witness(g, w) else None


def _claims(g: Graph, cycle: list[int]) -> Optional[SubdivisionWitness]:
    """A ladder from any of the excluded configurations around C."""
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    outside = [v for v in g.vertices() if v not in pos]

    def dist(i: int, j: int) -> int:
        d = abs(i - j)
        return min(d, n - d)

    def arcs_theta(c1: int, c2: int, third) -> Optional[SubdivisionWitness]:
        fwd, back = _arcs(cycle, pos[c1], pos[c2])
        return _theta_ladder(g, c1, c2, [third, fwd, back])

    # two adjacent vertices off C
    for w1 in outside:
        for w2 in g.neighbors(w1):
            if w2 in pos or w2 < w1:
                continue
            ps = vertex_disjoint_paths(g, [w1, w2], cycle, 2)
            if len(ps) == 2:
                p1 = ps[0] if ps[0][0] == w1 else ps[1]
                p2 = ps[1] if p1 is ps[0] else ps[0]
                path = list(reversed(p1)) + p2
                w = arcs_theta(path[0], path[-1], path)
                if w:
                    return w
    # neighbours of an outside vertex at distance 2 only, at most two of them
    for u in outside:
        nb = [x for x in g.neighbors(u) if x in pos]
        for c1, c2 in combinations(nb, 2):
            if dist(pos[c1], pos[c2]) >= 3:
                w = arcs_theta(c1, c2, [c1, u, c2])
                if w:
                    return w
        if len(nb) >= 3:
            c = sorted(nb[:3], key=lambda x: pos[x])
            for mid in range(3):
                v = c[mid]
                i = pos[v]
                left = [u, cycle[(i - 2) % n], cycle[(i - 1) % n], v]
                right = [u, cycle[(i + 2) % n], cycle[(i + 1) % n], v]
                if left[1] in nb and right[1] in nb:
                    w = _theta_ladder(g, u, v, [[u, v], left, right])
                    if w:
                        return w
    # chords at distance at least 3
    for x, y in g.edges():
        if x in pos and y in pos and dist(pos[x], pos[y]) >= 3:
            w = arcs_theta(x, y, [x, y])
            if w:
                return w
    # crossing outside vertices z1 ~ (c_i, c_i+2), z2 ~ (c_i+1, c_i+3)
    att = _attachments(g, cycle)
    for i, zs in att.items():
        zs2 = att.get((i + 1) % n)
        if zs2:
            v1, v2, v3, v4 = (cycle[(i + s) % n] for s in range(4))
            w = _theta_ladder(g, v2, v3, [[v2, v3], [v2, v1, zs[0], v3], [v2, zs2[0], v4, v3]])
            if w:
                return w
    return None


def _attachments(g: Graph, cycle: list[int]) -> dict[int, list[int]]:
    """Outside vertices keyed by i when adjacent to exactly c_i and c_{i+2}."""
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    att: dict[int, list[int]] = {}
    for u in g.vertices():
        if u in pos:
            continue
        nb = g.neighbors(u)
        if len(nb) != 2 or any(x not in pos for x in nb):
            continue
        i, j = pos[nb[0]], pos[nb[1]]
        if (i + 2) % n == j:
            att.setdefault(i, []).append(u)
        elif (j + 2) % n == i:
            att.setdefault(j, []).append(u)
    return att


def _walk(g: Graph, cycle: list[int], chord_order=None):
    """Walk around C building blocks, then fold in the chords. Returns a
    chain, a ladder witness from a chord that cannot be folded, or None."""
    n = len(cycle)
    att = _attachments(g, cycle)
    start = min(att) if att else 0
    blocks: list[ThetaBlock] = []
    covered = 0
    i = start
    while covered < n:
        c0, c1, c2 = cycle[i % n], cycle[(i + 1) % n], cycle[(i + 2) % n]
        if i % n in att:
            if covered + 2 > n:
                return None
            inner = [c1] + att[i % n]
            edges = [(c0, w) for w in inner] + [(w, c2) for w in inner]
            blocks.append(_block((c0, c2), inner, edges))
            covered += 2
            i += 2
        else:
            blocks.append(_block((c0, c1), [], [(c0, c1)]))
            covered += 1
            i += 1
    on_cycle = {norm(cycle[s], cycle[(s + 1) % n]) for s in range(n)}
    chords = [e for e in g.edges() if e[0] in set(cycle) and e[1] in set(cycle) and e not in on_cycle]
    if chord_order is not None:
        chords = [chords[k] for k in chord_order]
    for x, y in chords:
        nxt = _absorb_chord(blocks, x, y)
        if nxt is None:
            return _chord_ladder(g, cycle, x, y)
        blocks = nxt
    return ThetaChain(blocks)


def _chord_ladder(g: Graph, cycle: list[int], x: int, y: int) -> Optional[SubdivisionWitness]:
    """Ladder for a chord v2-v4 whose ends both sit inside order-1 thetas,
    so that v1-v3 and v3-v5 are chords too: v1 and v3 (or v3 and v5) are
    its degree-3 vertices."""
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    i = pos[x] if (pos[x] + 2) % n == pos[y] else pos[y]
    c = lambda s: cycle[(i + s) % n]
    v1, v2, v3, v4, v5 = c(-1), c(0), c(1), c(2), c(3)
    around = [c(-1 - s) for s in range(n - 4)] + [v5]
    for p, q, paths in (
        (v1, v3, [[v1, v3], [v1, v2, v4, v3], around + [v3]]),
        (v5, v3, [[v5, v3], [v5, v4, v2, v3], list(reversed(around)) + [v3]]),
    ):
        w = _theta_ladder(g, p, q, paths)
        if w is not None:
            return w
    return None


def _absorb_chord(blocks: list[ThetaBlock], x: int, y: int) -> Optional[list[ThetaBlock]]:
    """Fold a distance-2 chord into the ordering, or None if it does not fit."""
    m = len(blocks)
    e = norm(x, y)
    for j, b in enumerate(blocks):
        if set(b.ends) == {x, y}:
            out = list(blocks)
            out[j] = _block(b.ends, b.interior, set(b.edges) | {e})
            return out
    if m <= 2:
        return None
    for j in range(m):
        b1, b2 = blocks[j], blocks[(j + 1) % m]
        p, q, s = b1.ends[0], b1.ends[1], b2.ends[1]
        single1 = not b1.interior
        single2 = not b2.interior
        # an order-1 theta with its direct edge: p - w - q plus p - q
        order1 = lambda b: len(b.interior) == 1 and len(b.edges) == 3
        edges = set(b1.edges) | set(b2.edges) | {e}
        if {x, y} == {p, s} and single1 and single2:
            merged = _block((p, s), {q}, edges)
        elif order1(b1) and single2 and {x, y} == {next(iter(b1.interior)), s}:
            merged = _block((p, s), set(b1.interior) | {q}, edges)
        elif single1 and order1(b2) and {x, y} == {p, next(iter(b2.interior))}:
            merged = _block((p, s), set(b2.interior) | {q}, edges)
        else:
            continue
        if j + 1 < m:
            return blocks[:j] + [merged] + blocks[j + 2:]
        return [merged] + blocks[1:m - 1]
    return None


def _keyed(g: Graph, chain: ThetaChain) -> ThetaChain:
    chain.edge_ids = {g.endpoints(e): e for e in g.edge_ids()}
    return chain


def classify_ladder_free(g: Graph, budget=None, chord_order=None) -> Classification:
    """Ladder witness, or the structure of a 2-connected ladder-free graph."""
    if g.order < 3 or not is_two_connected(g):
        raise NotTwoConnected("classification needs a 2-connected graph")
    cycle = longest_cycle(g, budget)
    n = len(cycle)
    if n <= 4:
        # every ladder contains a cycle of length at least 6
        st = recognize_short_theta(g)
        if st is not None:
            return Classification("short_theta", short_theta=st)
        if g.order < 6:
            return Classification("small")
        return _fallback(g, budget, "a longest cycle of length at most 4 but not a short theta")
    w = _claims(g, cycle)
    if w is not None:
        return Classification("ladder", witness=w)
    found = _walk(g, cycle, chord_order)
    if isinstance(found, SubdivisionWitness):
        return Classification("ladder", witness=found)
    if found is not None and not chain_problems(g, found):
        return Classification("chain", chain=_keyed(g, found))
    if g.order < 6:
        return Classification("small")
    return _fallback(g, budget, "walk around the longest cycle got stuck")


def _fallback(g: Graph, budget, why: str) -> Classification:
    w = find_ladder3(g, budget=budget)
    if w is not None:
        return Classification("ladder", witness=w, method="search", notes=[why])
    chain = find_chain_bruteforce(g)
    if chain is not None:
        return Classification("chain", chain=chain, method="search", notes=[why])
    if g.order < 6:
        return Classification("small", method="search", notes=[why])
    raise InvariantViolation("ladder-free 2-connected graph that is neither small nor a chain")


def classify_house_free(g: Graph, budget=None) -> Classification:
    """House witness, or the cycle / short theta a house-free block must be.

    K4 has no house yet is neither a cycle nor a short theta; it is
    reported as a small graph.
    """
    if g.order < 3 or not is_two_connected(g):
        raise NotTwoConnected("classification needs a 2-connected graph")
    if all(g.degree(v) == 2 for v in g.vertices()):
        cyc = longest_cycle(g, budget)
        return Classification("cycle", cycle=cyc)
    st = recognize_short_theta(g)
    if st is not None:
        return Classification("short_theta", short_theta=st)
    w = find_house(g, budget=budget)
    if w is not None:
        return Classification("house", witness=w, method="search")
    if g.order < 5:
        return Classification("small", method="search")
    raise InvariantViolation("house-free 2-connected graph that is neither a cycle nor a short theta")


def tree_segments(t: Graph) -> list[list[int]]:
    """Maximal paths of a tree whose interior vertices all have degree 2."""
    stops = {v for v in t.vertices() if t.degree(v) != 2}
    out = []
    for s in sorted(stops):
        for y in t.neighbors(s):
            path = [s, y]
            while path[-1] not in stops:
                path.append(next(z for z in t.neighbors(path[-1]) if z != path[-2]))
            if s < path[-1]:
                out.append(path)
    return out


def count_segments(t: Graph) -> tuple[int, int]:
    """(segments, leaves) of a tree; a segment is a maximal path whose
    interior vertices all have degree 2."""
    if t.order < 2:
        raise TooSmall("segments need a tree with at least two vertices")
    if not is_tree(t):
        raise NotATree("input is not a tree")
    leaves = sum(1 for v in t.vertices() if t.degree(v) == 1)
    segments = len(tree_segments(t))
    if segments > 2 * leaves:
        raise InvariantViolation(f"{segments} segments but only {leaves} leaves")
    return segments, leaves
