"""Graph and witness JSON, plus DOT export."""

from __future__ import annotations

import json
from typing import Iterable, Optional, Union

from .graph import Graph, GraphError, InvariantViolation
from .witness import LinkageWitness, SubdivisionWitness


class ParseError(GraphError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field


class DanglingReference(GraphError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "dangling reference"


Labels = dict[str, Union[int, list[int]]]


def _int(x, field: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}", field=field)
    return x


def parse_graph(data: Union[bytes, str]) -> tuple[Graph, Labels]:
    """Read a graph JSON document; returns the graph and its labels.

    Edge ids follow list order unless an ``edge_ids`` list is given.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc.reason}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - {"vertices", "edges", "labels", "edge_ids"}
    if unknown:
        raise ParseError("unknown key", field=sorted(unknown)[0])
    vertices = doc.get("vertices", [])
    edges = doc.get("edges")
    if edges is None:
        raise ParseError("missing key", field="edges")
    if not isinstance(vertices, list):
        raise ParseError("expected a list", field="vertices")
    if not isinstance(edges, list):
        raise ParseError("expected a list", field="edges")
    ids = doc.get("edge_ids")
    if ids is not None and (not isinstance(ids, list) or len(ids) != len(edges)):
        raise ParseError("edge_ids must be a list as long as edges", field="edge_ids")

    g = Graph()
    for i, v in enumerate(vertices):
        v = _int(v, f"vertices[{i}]")
        if v < 0:
            raise ParseError("vertex ids are non-negative", field=f"vertices[{i}]")
        g.add_vertex(v)  # duplicates raise InvariantViolation
    for i, pair in enumerate(edges):
        f = f"edges[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("an edge is a pair [u, v]", field=f)
        u, v = _int(pair[0], f), _int(pair[1], f)
        if u not in g or v not in g:
            raise InvariantViolation(f"{f}: endpoint not in vertices")
        eid = None if ids is None else _int(ids[i], f"edge_ids[{i}]")
        g.add_edge(u, v, eid)

    labels: Labels = {}
    raw = doc.get("labels", {})
    if not isinstance(raw, dict):
        raise ParseError("expected an object", field="labels")
    for name, val in raw.items():
        f = f"labels.{name}"
        if isinstance(val, list):
            labels[name] = [_int(x, f) for x in val]
            vs = labels[name]
        else:
            labels[name] = _int(val, f)
            vs = [val]
        if any(x not in g for x in vs):
            raise InvariantViolation(f"{f}: label points at a missing vertex")
    return g, labels


def graph_to_json(g: Graph, labels: Optional[Labels] = None) -> dict:
    out: dict = {"vertices": g.vertices(), "edges": [list(e) for e in g.edges()]}
    ids = g.edge_ids()
    if ids != list(range(len(ids))):
        out["edge_ids"] = ids
    if labels:
        out["labels"] = {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in labels.items()}
    return out


def dumps(obj) -> str:
    """Compact, key-sorted JSON with a trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def dump_graph(g: Graph, labels: Optional[Labels] = None) -> bytes:
    return dumps(graph_to_json(g, labels)).encode()


def load_witness(data: Union[bytes, str, dict]) -> SubdivisionWitness:
    doc = data if isinstance(data, dict) else json.loads(data)
    try:
        return SubdivisionWitness.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad witness: {exc}") from None


# -- DOT -------------------------------------------------------------------------------

_NAMED = ("a", "b", "c", "d")


def _vertex_names(labels: Optional[Labels]) -> dict[int, str]:
    names: dict[int, str] = {}
    if not labels:
        return names
    for key in _NAMED:
        if isinstance(labels.get(key), int):
            names[labels[key]] = key
    z = labels.get("z")
    if isinstance(z, list):
        for i, v in enumerate(z):
            names.setdefault(v, f"z{i}")
    return names


def _path_ids(g: Graph, path) -> list[int]:
    out = []
    for x, y in zip(path, path[1:]):
        if not g.has_edge(x, y):
            raise DanglingReference(f"highlighted edge {x}-{y} is not in the graph")
        out.append(g.edge_id(x, y))
    return out


def highlight_edges(g: Graph, item) -> set[int]:
    """Edge ids referenced by a witness, certificate, or plain id list."""
    if isinstance(item, SubdivisionWitness):
        paths = list(item.paths.values()) + list(item.attach.values())
        return {e for p in paths for e in _path_ids(g, p)}
    if isinstance(item, LinkageWitness):
        return set(_path_ids(g, item.path_ab)) | set(_path_ids(g, item.path_cd))
    witnesses = getattr(item, "witnesses", None)
    if witnesses is not None:
        out = {e for w in witnesses for e in highlight_edges(g, w)}
        hitting = getattr(item, "hitting", ())
        return out | highlight_edges(g, list(hitting))
    ids = set(item)
    missing = sorted(e for e in ids if not g.has_edge_id(e))
    if missing:
        raise DanglingReference(f"unknown edge id {missing[0]}")
    return ids


def export_dot(g: Graph, highlights: Iterable = (), labels: Optional[Labels] = None) -> bytes:
    bold: set[int] = set()
    for item in highlights:
        bold |= highlight_edges(g, item)
    names = _vertex_names(labels)
    lines = ["graph G {"]
    for v in g.vertices():
        if v in names:
            lines.append(f'  {v} [label="{names[v]}"];')
        else:
            lines.append(f"  {v};")
    for e, (u, v) in g.edge_items():
        style = ", style=bold, penwidth=3" if e in bold else ""
        lines.append(f'  {u} -- {v} [id="e{e}"{style}];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()
