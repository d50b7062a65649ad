"""JSON forms of graphs, embeddings and reports.

All output is key-sorted and newline-terminated; coordinates are exact
``"p/q"`` strings.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .errors import InvalidArgument
from .graphcore import Graph, MarkedGraph
from .spatial import Embedding


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def graph_to_json(g: Graph | MarkedGraph) -> dict:
    marks = None
    if isinstance(g, MarkedGraph):
        marks = {"a": g.a, "b": g.b, "c": g.c}
        g = g.graph
    verts = []
    for v in g.vertices:
        item = {"id": v}
        if v in g.labels:
            item["label"] = g.labels[v]
        verts.append(item)
    out = {"vertices": verts, "edges": [list(e) for e in g.sorted_edges()]}
    if marks:
        out["marks"] = marks
    if g.copies:
        out["copies"] = [list(c) for c in g.copies]
    return out


def graph_from_json(data: dict) -> Graph | MarkedGraph:
    """Inverse of :func:`graph_to_json`; returns a MarkedGraph when marks are present."""
    try:
        ids = [v["id"] for v in data["vertices"]]
        if sorted(ids) != list(range(len(ids))):
            raise InvalidArgument("vertex ids must be 0..n-1")
        labels = {v["id"]: v["label"] for v in data["vertices"] if "label" in v}
        edges = frozenset((int(u), int(v)) for u, v in data["edges"])
        copies = tuple(tuple(c) for c in data.get("copies", ()))
        g = Graph(len(ids), edges, labels, copies)
        marks = data.get("marks")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"malformed graph JSON: {exc}") from exc
    if marks:
        return MarkedGraph(g, marks["a"], marks["b"], marks["c"])
    return g


def _point_json(p) -> list[str]:
    return [frac_str(x) for x in p]


def embedding_to_json(e: Embedding, **extra) -> dict:
    out = {
        "graph": graph_to_json(e.host),
        "positions": {str(v): _point_json(p) for v, p in enumerate(e.positions)},
    }
    if e.subdivisions:
        out["subdivisions"] = {f"{u}-{v}": [_point_json(p) for p in pts]
                               for (u, v), pts in sorted(e.subdivisions.items())}
    out.update(extra)
    return out


def embedding_from_json(data: dict) -> Embedding:
    try:
        g = graph_from_json(data["graph"])
        if isinstance(g, MarkedGraph):
            g = g.graph
        pos = [data["positions"][str(v)] for v in g.vertices]
        subs = {}
        for key, pts in data.get("subdivisions", {}).items():
            u, v = (int(x) for x in key.split("-"))
            subs[(u, v)] = pts
        return Embedding(g, pos, subs)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"malformed embedding JSON: {exc}") from exc


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: not valid JSON ({exc})") from exc


def load_fixture(name: str) -> Embedding:
    """Shipped fixture embedding (``trefoil``, ``figure_eight``, ``trefoil_sum``,
    ``unknot_square``, ``hopf``, ``d4_ring``)."""
    text = resources.files("linklab").joinpath(f"data/{name}.json").read_text()
    return embedding_from_json(json.loads(text))
