"""Command-line interface.

Exit codes: 0 success or packing, 10 hitting set, 1 counterexample found
by ``verify``, 2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from types import SimpleNamespace
from typing import Optional

from .graph import Budget, BudgetExceeded, GraphError, InvariantViolation, default_budget
from .io import DanglingReference, ParseError, dump_graph, dumps, export_dot, load_witness, parse_graph
from .patterns import find_house, find_ladder, find_ladder3, find_xwing
from .solver import EppCertificate, solve_house, solve_ladder3
from .structure import NotTwoConnected, classify_house_free, classify_ladder_free
from .trees import am_tree_solve
from .verifier import check_gstar_one_ladder, check_ladder_bounds, check_no_two_linkages, check_xwing_robustness, fuzz_invariants
from .walls import InvalidParams, build_condensed_wall, build_counterexample, pack_ladders13

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_HITTING = 10

LEMMAS = ("no-two-linkages", "ladder-bounds", "xwing", "gstar-one-ladder", "fuzz")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    out: Optional[str] = None
    dot: Optional[str] = None
    seed: Optional[int] = None
    budget: int = 0
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        opts = {k: v for k, v in vars(ns).items() if k not in ("command", "file", "out", "dot", "seed", "budget", "func")}
        inputs = [ns.file] if getattr(ns, "file", None) else []
        budget = ns.budget if ns.budget is not None else default_budget()
        if budget < 1:
            raise UsageError("--budget must be positive")
        return cls(ns.command, inputs, ns.out, ns.dot, getattr(ns, "seed", None), budget, opts)

    def new_budget(self) -> Budget:
        return Budget(self.budget)


def _read_graph(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(data)


def _emit(cfg: RunConfig, obj) -> None:
    text = obj if isinstance(obj, str) else dumps(obj)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_dot(cfg: RunConfig, g, highlights=(), labels=None) -> None:
    if cfg.dot:
        Path(cfg.dot).write_bytes(export_dot(g, highlights, labels))


def _with_budget(obj: dict, b: Budget) -> dict:
    return dict(obj, budget={"limit": b.limit, "used": b.used})


# -- subcommands -----------------------------------------------------------------------


def cmd_gen(cfg: RunConfig) -> int:
    o = cfg.options
    if o["kind"] == "wall":
        if o["size"] is None:
            raise UsageError("gen wall needs --size")
        w = build_condensed_wall(o["size"])
        g, labels = w.graph, w.labels()
    else:
        if None in (o["r"], o["la"], o["lc"]):
            raise UsageError("gen gstar needs --r, --la and --lc")
        gx = build_counterexample(o["r"], o["la"], o["lc"])
        g, labels = gx.graph, gx.labels()
    _emit(cfg, dump_graph(g, labels).decode())
    _write_dot(cfg, g, labels=labels)
    return EXIT_OK


def cmd_pack13(cfg: RunConfig) -> int:
    w = build_condensed_wall(cfg.options["size"])
    ws = pack_ladders13(w, cfg.options["n"])
    _emit(cfg, {"wall_size": w.r, "witnesses": [x.to_json() for x in ws]})
    _write_dot(cfg, w.graph, ws, w.labels())
    return EXIT_OK


def _wall_from_labels(g, labels):
    missing = [k for k in ("a", "b", "c", "d") if not isinstance(labels.get(k), int)]
    if missing:
        raise UsageError(f"X-wing detection needs labels {', '.join(missing)}")
    return SimpleNamespace(graph=g, a=labels["a"], b=labels["b"], c=labels["c"], d=labels["d"])


def cmd_detect(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.inputs[0])
    b = cfg.new_budget()
    pattern = cfg.options["pattern"]
    if pattern == "ladder3":
        w = find_ladder3(g, budget=b)
    elif pattern == "house":
        w = find_house(g, budget=b)
    elif pattern == "xwing":
        w = find_xwing(_wall_from_labels(g, labels), budget=b)
    else:
        if cfg.options["l"] is None:
            raise UsageError("detect --pattern ladder needs --l")
        w = find_ladder(g, cfg.options["l"], budget=b)
    out = {"found": w is not None}
    if w is not None:
        out["witness"] = w.to_json()
    _emit(cfg, _with_budget(out, b))
    _write_dot(cfg, g, [w] if w is not None else [], labels)
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.inputs[0])
    b = cfg.new_budget()
    fn = classify_ladder_free if cfg.options["pattern"] == "ladder3" else classify_house_free
    c = fn(g, budget=b)
    _emit(cfg, _with_budget(c.to_json(), b))
    _write_dot(cfg, g, [c.witness] if c.witness is not None else [], labels)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_amtree(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.inputs[0])
    A = _int_list(cfg.options["A"])
    b = cfg.new_budget()
    try:
        out = am_tree_solve(g, A, cfg.options["m"], cfg.options["k"], b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, _with_budget(out.to_json(), b))
    marks = [t.edge_ids() for t in out.trees] if out.kind == "packing" else [sorted(out.hitting)]
    _write_dot(cfg, g, marks, labels)
    return EXIT_OK if out.kind == "packing" else EXIT_HITTING


def cmd_solve(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.inputs[0])
    solve = solve_ladder3 if cfg.options["pattern"] == "ladder3" else solve_house
    if cfg.options["k"] < 1:
        raise UsageError("--k must be positive")
    cert, report = solve(g, cfg.options["k"], budget=cfg.new_budget())
    if cfg.options["report"]:
        _emit(cfg, {"certificate": cert.to_json(), "report": report.to_json()})
    else:
        _emit(cfg, cert.to_json())
    _write_dot(cfg, g, [cert], labels)
    return EXIT_OK if cert.kind == "packing" else EXIT_HITTING


def cmd_verify(cfg: RunConfig) -> int:
    o = cfg.options
    lemma, size = o["lemma"], o["size"]
    b = cfg.new_budget()
    if lemma == "fuzz":
        if cfg.seed is None:
            raise UsageError("verify --lemma fuzz needs --seed")
        reports = fuzz_invariants(cfg.seed, cfg.budget, count=o["count"], max_n=size or 9)
        _emit(cfg, [r.to_json() for r in reports])
    else:
        if size is None:
            raise UsageError(f"verify --lemma {lemma} needs --size")
        if lemma == "no-two-linkages":
            report = check_no_two_linkages(build_condensed_wall(size), b)
        elif lemma == "ladder-bounds":
            report = check_ladder_bounds(build_condensed_wall(size), b)
        elif lemma == "xwing":
            w = build_condensed_wall(size)
            d = o["deletions"] if o["deletions"] is not None else max(0, size // 2 - 1)
            report = check_xwing_robustness(w, d, b, seed=cfg.seed or 0)
        else:
            report = check_gstar_one_ladder(build_counterexample(size, 7, 4), b)
        reports = [report]
        _emit(cfg, report.to_json())
    if any(r.result == "counterexample" for r in reports):
        return EXIT_COUNTEREXAMPLE
    if any(r.result == "budget exceeded" for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_export_dot(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.inputs[0])
    highlights: list = []
    for path in cfg.options["witness"] or []:
        doc = json.loads(Path(path).read_text())
        if "kind" in doc:
            highlights.append(EppCertificate.from_json(doc))
        else:
            highlights.append(load_witness(doc))
    if cfg.options["edges"]:
        highlights.append(_int_list(cfg.options["edges"]))
    dot = export_dot(g, highlights, labels).decode()
    _emit(cfg, dot)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "pack13": cmd_pack13,
    "detect": cmd_detect,
    "classify": cmd_classify,
    "amtree": cmd_amtree,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, help="search state budget (default: EPP_BUDGET or 10^8)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--dot", help="also write a DOT rendering here")

    p = argparse.ArgumentParser(prog="ladderepp", description="Ladders, walls and edge-Erdős-Pósa certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate a wall or the counterexample graph")
    s.add_argument("kind", choices=("wall", "gstar"))
    s.add_argument("--size", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--la", type=int)
    s.add_argument("--lc", type=int)

    s = sub.add_parser("pack13", parents=[common], help="edge-disjoint 13-rung ladders in a wall")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("detect", parents=[common], help="search for a pattern")
    s.add_argument("--pattern", choices=("ladder3", "house", "ladder", "xwing"), required=True)
    s.add_argument("--l", type=int)
    s.add_argument("file")

    s = sub.add_parser("classify", parents=[common], help="witness or structure of a 2-connected graph")
    s.add_argument("--pattern", choices=("ladder3", "house"), required=True)
    s.add_argument("file")

    s = sub.add_parser("amtree", parents=[common], help="k edge-disjoint A-m-trees or a hitting set")
    s.add_argument("--A", required=True, help="comma-separated vertex ids")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("file")

    s = sub.add_parser("solve", parents=[common], help="k edge-disjoint copies or a hitting edge set")
    s.add_argument("--pattern", choices=("ladder3", "house"), required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--report", action="store_true")
    s.add_argument("file")

    s = sub.add_parser("verify", parents=[common], help="run a structural check or the fuzzer")
    s.add_argument("--lemma", choices=LEMMAS, required=True)
    s.add_argument("--size", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--deletions", type=int)
    s.add_argument("--count", type=int, default=1000, help="fuzz: number of random graphs")

    s = sub.add_parser("export-dot", parents=[common], help="render a graph with highlights")
    s.add_argument("file")
    s.add_argument("--witness", action="append", help="witness or certificate JSON (repeatable)")
    s.add_argument("--edges", help="comma-separated edge ids to highlight")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded ({exc})", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParseError, InvariantViolation, DanglingReference, InvalidParams, NotTwoConnected) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
