"""Exhaustive checks of the structural facts on small instances, and a
seeded fuzzer for the algorithmic invariants."""

from __future__ import annotations

import dataclasses
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .graph import Budget, BudgetExceeded, Graph, GraphError, as_budget, bfs_path, is_two_connected, max_edge_disjoint_paths
from .patterns import (
    find_house,
    find_ladder,
    find_ladder3,
    find_ladder_naive,
    find_xwing,
    max_ladder_size,
    max_linkage_packing,
)
from .solver import PATTERNS, _house_search, solve_house, solve_ladder3, verify_certificate
from .structure import classify_house_free, classify_ladder_free
from .walls import CondensedWall, CounterexampleGraph, InvalidParams, NotFound, embed_ladder13, embed_xwing, witness_ladder_l
from .witness import validate_linkage, validate_witness

DELETION_CAP = 10**6


@dataclass
class LemmaReport:
    """result is "holds", "holds (sampled)", "counterexample",
    "informational" or "budget exceeded"."""

    lemma: str
    instance: dict
    claim: str
    result: str
    counterexample: Optional[dict] = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.result in ("holds", "holds (sampled)", "informational")

    def to_json(self) -> dict:
        out = {"lemma": self.lemma, "instance": self.instance, "claim": self.claim, "result": self.result, "stats": self.stats}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _wall_instance(w: CondensedWall) -> dict:
    return {"wall_size": w.r, "vertices": w.graph.order, "edges": w.graph.size}


# -- linkages ----------------------------------------------------------------------


def check_no_two_linkages(w: CondensedWall, budget=None) -> LemmaReport:
    if w.r > 3:
        raise InvalidParams("linkage exhaustion is limited to walls of size at most 3")
    budget = as_budget(budget)
    claim = "at most one edge-disjoint (a-b, c-d)-linkage"
    inst = _wall_instance(w)
    try:
        count, packing = max_linkage_packing(w.graph, w.a, w.b, w.c, w.d, budget=budget, cap=2)
    except BudgetExceeded:
        return LemmaReport("no-two-linkages", inst, claim, "budget exceeded", stats={"states": budget.used})
    stats = {"states": budget.used, "max_linkages_capped_at_2": count}
    if count <= 1:
        return LemmaReport("no-two-linkages", inst, claim, "holds", stats=stats)
    # re-check the two linkages without trusting the search
    used: set[int] = set()
    for lw in packing:
        if not validate_linkage(w.graph, lw, w.a, w.b, w.c, w.d):
            raise GraphError("linkage search produced an invalid linkage")
        ids = lw.edge_ids(w.graph)
        if ids & used:
            raise GraphError("linkage search produced overlapping linkages")
        used |= ids
    cx = {"linkages": [lw.to_json() for lw in packing]}
    return LemmaReport("no-two-linkages", inst, claim, "counterexample", cx, stats)


def with_extra_edges(w: CondensedWall, pairs) -> CondensedWall:
    """The same wall labelling on a copy of the graph with extra edges."""
    g = w.graph.copy()
    for u, v in pairs:
        if not g.has_edge(u, v):
            g.add_edge(u, v)
    return dataclasses.replace(w, graph=g)


# -- ladder sizes ----------------------------------------------------------------------


def check_ladder_bounds(w: CondensedWall, budget=None) -> LemmaReport:
    """Ladders in W - {a,b} have at most 5 rungs; ladders in W at most 13.

    The first part runs for sizes up to 4, the second up to 3. From size 5
    on a 13-rung ladder is built and validated instead.
    """
    budget = as_budget(budget)
    claim = "max ladder in W-{a,b} <= 5 and max ladder in W <= 13"
    stats: dict = {}
    bad = None
    try:
        if w.r <= 4:
            h = w.graph.without_vertices([w.a, w.b])
            stats["max_without_ab"] = max_ladder_size(h, budget=budget)
            if stats["max_without_ab"] > 5:
                bad = {"part": "without_ab", "witness": find_ladder(h, 6, budget=budget).to_json()}
        if w.r <= 3 and bad is None:
            stats["max_full"] = max_ladder_size(w.graph, floor=1, budget=budget)
            if stats["max_full"] > 13:
                bad = {"part": "full", "witness": find_ladder(w.graph, 14, budget=budget).to_json()}
    except BudgetExceeded:
        stats["states"] = budget.used
        return LemmaReport("ladder-bounds", _wall_instance(w), claim, "budget exceeded", stats=stats)
    if w.r >= 5:
        lad = embed_ladder13(w)
        stats["ladder13_validates"] = validate_witness(w.graph, lad) and lad.l == 13
    stats["states"] = budget.used
    if bad is not None:
        return LemmaReport("ladder-bounds", _wall_instance(w), claim, "counterexample", bad, stats)
    if stats.get("ladder13_validates") is False:
        return LemmaReport("ladder-bounds", _wall_instance(w), claim, "counterexample", {"part": "ladder13"}, stats)
    return LemmaReport("ladder-bounds", _wall_instance(w), claim, "holds", stats=stats)


# -- X-wings ------------------------------------------------------------------------


def deletion_sets(edges: list[int], d: int, cap: int = DELETION_CAP, samples: int = 1000, seed: int = 0):
    """All d-subsets of ``edges``, or ``samples`` seeded random ones when
    there are more than ``cap``. Returns (sets, sampled)."""
    total = math.comb(len(edges), d)
    if total <= cap:
        return [frozenset(c) for c in itertools.combinations(edges, d)], False
    rng = random.Random(seed)
    return [frozenset(rng.sample(edges, d)) for _ in range(samples)], True


def check_xwing_robustness(
    w: CondensedWall, deletions: int, budget=None, cap: int = DELETION_CAP, samples: int = 1000, seed: int = 0, search_budget: int = 10**5
) -> LemmaReport:
    """For a wall of size 2r, every deletion of r-1 edges leaves an X-wing.

    Each deletion set goes through two routes. The layer construction must
    succeed and its witness must validate. A generic search, limited to
    ``search_budget`` states per set, looks for any X-wing; a validated
    find is counted, running out of states is counted separately, and
    an exhausted search that finds nothing contradicts the construction.
    More deletions than r-1 is outside the claim and only informational.
    """
    budget = as_budget(budget)
    r = max(1, w.r // 2)
    in_scope = deletions <= r - 1
    claim = f"an X-wing survives any {deletions} edge deletions"
    inst = dict(_wall_instance(w), deletions=deletions, r=r)
    sets, sampled = deletion_sets(w.graph.edge_ids(), deletions, cap, samples, seed)
    built = found = unknown = 0
    first_bad = None
    for bad in sets:
        budget.tick()
        h = w.graph.without_edges(bad)
        try:
            x = embed_xwing(w, bad)
            ok_built = validate_witness(h, x)
        except NotFound:
            ok_built = False
        search = Budget(search_budget)
        try:
            y = find_xwing(w, bad, search)
            verdict = "found" if y is not None and validate_witness(h, y) else "absent"
        except BudgetExceeded:
            verdict = "unknown"
        budget.tick(search.used)
        built += ok_built
        found += verdict == "found"
        unknown += verdict == "unknown"
        if first_bad is None and (not ok_built or verdict == "absent"):
            first_bad = {"deleted": sorted(bad), "construction": ok_built, "search": verdict}
    stats = {
        "sets": len(sets),
        "sampled": sampled,
        "construction_ok": built,
        "search_found": found,
        "search_out_of_budget": unknown,
        "states": budget.used,
    }
    if not in_scope:
        return LemmaReport("xwing", inst, claim, "informational", first_bad, stats)
    if first_bad is not None:
        return LemmaReport("xwing", inst, claim, "counterexample", first_bad, stats)
    return LemmaReport("xwing", inst, claim, "holds (sampled)" if sampled else "holds", stats=stats)


# -- the counterexample graph -----------------------------------------------------------------


def check_gstar_one_ladder(gx: CounterexampleGraph, budget=None, second_budget: int = 10**6) -> LemmaReport:
    """Every deletion of a single edge leaves an l-rung ladder.

    Also records a packing count: after the first witness, a bounded
    search for a second, edge-disjoint one. The outcome is reported as
    found, absent or unknown without drawing a conclusion from it.
    """
    if gx.r != 2:
        raise InvalidParams("the one-ladder check enumerates single deletions and needs r = 2")
    budget = as_budget(budget)
    g = gx.graph
    claim = f"a {gx.l}-rung ladder survives any {gx.r - 1} edge deletion"
    inst = {"r": gx.r, "lA": gx.lA, "lC": gx.lC, "l": gx.l, "vertices": g.order, "edges": g.size}
    checked = 0
    first_bad = None
    for bad in [()] + [(e,) for e in g.edge_ids()]:
        budget.tick()
        try:
            w = witness_ladder_l(gx, bad)
            ok = w.l == gx.l and validate_witness(g.without_edges(bad), w)
        except NotFound:
            ok = False
        checked += 1
        if not ok and first_bad is None:
            first_bad = {"deleted": list(bad)}
    stats = {"deletion_sets": checked, "states": budget.used}
    w0 = witness_ladder_l(gx)
    used = {e for p in w0.paths.values() for e in g.path_edges(p)}
    try:
        second = find_ladder(g.without_edges(used), gx.l, budget=Budget(second_budget))
        stats["greedy_second_ladder"] = "found" if second is not None else "absent"
    except BudgetExceeded:
        stats["greedy_second_ladder"] = f"unknown (budget {second_budget} exceeded)"
    stats["packing_lower_bound"] = 2 if stats["greedy_second_ladder"] == "found" else 1
    if first_bad is not None:
        return LemmaReport("gstar-one-ladder", inst, claim, "counterexample", first_bad, stats)
    return LemmaReport("gstar-one-ladder", inst, claim, "holds", stats=stats)


# -- fuzzing ----------------------------------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    g = Graph(range(n))
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            g.add_edge(u, v)
    return g


def subdivided_graph(rng: random.Random, max_n: int) -> Graph:
    """A random base graph on few vertices with edges subdivided until the
    vertex count reaches ``max_n``."""
    base_n = rng.randint(4, min(6, max_n))
    pairs = [(u, v) for u, v in itertools.combinations(range(base_n), 2) if rng.random() < 0.6]
    g = Graph(range(base_n))
    for u, v in pairs:
        g.add_edge(u, v)
    while g.order < max_n and g.size:
        e = rng.choice(g.edge_ids())
        u, v = g.endpoints(e)
        h = g.without_edges([e])
        m = h.add_vertex()
        h.add_edge(u, m)
        h.add_edge(m, v)
        g = h
    return g


def planted_graph(rng: random.Random, k: int, pattern: str) -> Graph:
    """k vertex-disjoint random subdivisions of the pattern, joined by a few
    random edges."""
    lengths = {"ladder3": (3, 3, 1), "house": (3, 2, 1)}[pattern]
    g = Graph()
    for _ in range(k):
        x, y = g.add_vertex(), g.add_vertex()
        for base in lengths:
            extra = rng.choice((0, 0, 1))
            mids = [g.add_vertex() for _ in range(base - 1 + extra)]
            g.add_path([x] + mids + [y])
    vs = g.vertices()
    for _ in range(rng.randint(0, 3)):
        u, v = rng.sample(vs, 2)
        if not g.has_edge(u, v):
            g.add_edge(u, v)
    return g


def _menger_ok(g: Graph, s: int, t: int) -> bool:
    count, paths, cut = max_edge_disjoint_paths(g, s, t, g.size + 1)
    used: set[int] = set()
    for p in paths:
        if p[0] != s or p[-1] != t:
            return False
        ids = g.path_edges(p)
        if used & set(ids):
            return False
        used |= set(ids)
    h = g.without_edges(cut)
    return count == len(paths) == len(cut) and bfs_path(h, [s], [t]) is None


def fuzz_invariants(seed: int, budget=None, count: int = 1000, max_n: int = 9) -> list[LemmaReport]:
    """Random graphs through witness validation, solver soundness,
    classifier agreement and Menger equality, plus planted packings.

    Reports contain only counts, so a replay with the same arguments is
    byte-identical. ``budget`` is per operation; runs that exceed it are
    counted separately and are not violations.
    """
    limit = as_budget(budget).limit
    rng = random.Random(seed)
    tallies = {name: {"cases": 0, "violations": 0, "budget_exceeded": 0} for name in ("witness", "solver", "classifier", "menger", "planted")}
    first: dict[str, dict] = {}
    spent = {name: 0 for name in tallies}
    live: list[tuple[str, Budget]] = []

    def fresh(name: str) -> Budget:
        b = Budget(limit)
        live.append((name, b))
        return b

    def record(name: str, ok: bool, detail: dict) -> None:
        tallies[name]["cases"] += 1
        if not ok:
            tallies[name]["violations"] += 1
            first.setdefault(name, detail)

    for i in range(count):
        if i % 2 == 0:
            n = rng.randint(4, max_n)
            g = random_graph(rng, n, rng.uniform(0.2, 0.7))
            gen = "er"
        else:
            g = subdivided_graph(rng, rng.randint(5, max_n))
            gen = "subdivided"
        detail = {"case": i, "generator": gen, "edges": [list(e) for e in g.edges()]}
        try:
            # finders against the plain search
            lw = find_ladder3(g, budget=fresh("witness"))
            naive = find_ladder_naive(g, 3, budget=fresh("witness"))
            hw = find_house(g, budget=fresh("witness"))
            ok = (lw is None) == (naive is None)
            ok &= lw is None or validate_witness(g, lw)
            ok &= hw is None or validate_witness(g, hw)
            ok &= (hw is None) == (not _house_search(g, fresh("witness")))
            record("witness", ok, detail)
        except BudgetExceeded:
            tallies["witness"]["budget_exceeded"] += 1
        k = rng.randint(1, 3)
        pattern = PATTERNS[i % 2]
        try:
            solve = solve_ladder3 if pattern == "ladder3" else solve_house
            cert, _ = solve(g, k, budget=fresh("solver"))
            record("solver", verify_certificate(g, k, cert, fresh("solver")), dict(detail, k=k, pattern=pattern))
        except BudgetExceeded:
            tallies["solver"]["budget_exceeded"] += 1
        if g.order >= 3 and is_two_connected(g):
            try:
                c = classify_ladder_free(g, budget=fresh("classifier"))
                ok = (c.kind == "ladder") == (naive is not None)
                ch = classify_house_free(g, budget=fresh("classifier"))
                ok &= (ch.kind == "house") == (hw is not None)
                record("classifier", ok, detail)
            except BudgetExceeded:
                tallies["classifier"]["budget_exceeded"] += 1
        vs = g.vertices()
        if len(vs) >= 2:
            s, t = rng.sample(vs, 2)
            record("menger", _menger_ok(g, s, t), dict(detail, s=s, t=t))
    for j in range(max(1, count // 20)):
        pattern = PATTERNS[j % 2]
        g = planted_graph(rng, 2, pattern)
        try:
            solve = solve_ladder3 if pattern == "ladder3" else solve_house
            cert, _ = solve(g, 2, budget=fresh("planted"))
            ok = cert.kind == "packing" and verify_certificate(g, 2, cert, fresh("planted"))
            record("planted", ok, {"case": j, "pattern": pattern, "edges": [list(e) for e in g.edges()]})
        except BudgetExceeded:
            tallies["planted"]["budget_exceeded"] += 1

    claims = {
        "witness": "finder witnesses validate and agree with the plain search",
        "solver": "every certificate verifies",
        "classifier": "classifiers agree with the finders on 2-connected graphs",
        "menger": "max flow equals min cut and both are certified",
        "planted": "planted instances with two disjoint copies are packed",
    }
    for name, b in live:
        spent[name] += b.used
    reports = []
    for name, t in tallies.items():
        result = "holds" if t["violations"] == 0 else "counterexample"
        inst = {"seed": seed, "count": count, "max_n": max_n}
        reports.append(LemmaReport(f"fuzz:{name}", inst, claims[name], result, first.get(name), dict(t, states=spent[name])))
    return reports
