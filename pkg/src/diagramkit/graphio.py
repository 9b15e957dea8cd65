"""Plain-text graph files and JSON report helpers.

File grammar, one item per line::

    # comment                (ignored, as are blank lines)
    v <id> w=<int> [g=<int>]
    e <id> <id> [m=<int>]

Vertex genus defaults to 0 and edge multiplicity to 1.  Serialization
emits vertices along the canonical order, so isomorphic inputs with the
same labels always serialize identically and parse(serialize(g)) == g.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import format_rational
from .graphs import Vertex, WeightedGraph, canonical_order

_ID = re.compile(r"^[A-Za-z0-9_.-]+$")


class GraphParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _parse_kv(token: str, line_no: int, expected: str) -> int:
    if "=" not in token:
        raise GraphParseError(line_no, f"expected {expected}=<int>, got {token!r}")
    key, _, raw = token.partition("=")
    if key != expected:
        raise GraphParseError(line_no, f"expected key {expected!r}, got {key!r}")
    try:
        return int(raw)
    except ValueError:
        raise GraphParseError(line_no, f"bad integer for {expected}: {raw!r}") from None


def parse_graph(text: str) -> WeightedGraph:
    vertices: list[Vertex] = []
    ids: set[str] = set()
    edges: list[tuple[str, str, int]] = []
    edge_keys: set[tuple[str, str]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "v":
            if len(tokens) not in (3, 4):
                raise GraphParseError(line_no, "vertex line needs: v <id> w=<int> [g=<int>]")
            vid = tokens[1]
            if not _ID.match(vid):
                raise GraphParseError(line_no, f"bad vertex id {vid!r}")
            if vid in ids:
                raise GraphParseError(line_no, f"duplicate vertex id {vid!r}")
            weight = _parse_kv(tokens[2], line_no, "w")
            genus = _parse_kv(tokens[3], line_no, "g") if len(tokens) == 4 else 0
            if weight < 1:
                raise GraphParseError(line_no, f"weight must be >= 1, got {weight}")
            if genus < 0:
                raise GraphParseError(line_no, f"genus must be >= 0, got {genus}")
            ids.add(vid)
            vertices.append(Vertex(vid, weight, genus))
        elif kind == "e":
            if len(tokens) not in (3, 4):
                raise GraphParseError(line_no, "edge line needs: e <id> <id> [m=<int>]")
            u, v = tokens[1], tokens[2]
            for end in (u, v):
                if end not in ids:
                    raise GraphParseError(line_no, f"edge endpoint {end!r} not declared")
            if u == v:
                raise GraphParseError(line_no, f"self-edge at {u!r}")
            mult = _parse_kv(tokens[3], line_no, "m") if len(tokens) == 4 else 1
            if mult < 1:
                raise GraphParseError(line_no, f"multiplicity must be >= 1, got {mult}")
            key = (u, v) if u < v else (v, u)
            if key in edge_keys:
                raise GraphParseError(line_no, f"duplicate edge {u!r}-{v!r}")
            edge_keys.add(key)
            edges.append((u, v, mult))
        else:
            raise GraphParseError(line_no, f"unknown line kind {kind!r}")
    return WeightedGraph(vertices, edges)


def serialize_graph(g: WeightedGraph) -> str:
    order = canonical_order(g)
    pos = {vid: i for i, vid in enumerate(order)}
    lines = []
    for vid in order:
        v = g.vertex(vid)
        suffix = f" g={v.genus}" if v.genus else ""
        lines.append(f"v {vid} w={v.weight}{suffix}")
    for u, v, m in sorted(g.edges, key=lambda e: (pos[e[0]], pos[e[1]])):
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        suffix = f" m={m}" if m != 1 else ""
        lines.append(f"e {a} {b}{suffix}")
    return "\n".join(lines) + ("\n" if lines else "")


def graph_to_json(g: WeightedGraph) -> dict:
    """Canonical-order JSON payload used inside reports."""
    order = canonical_order(g)
    pos = {vid: i for i, vid in enumerate(order)}
    verts = [
        {"id": vid, "weight": g.vertex(vid).weight, "genus": g.vertex(vid).genus}
        for vid in order
    ]
    edges = sorted(
        ([u, v, m] if pos[u] < pos[v] else [v, u, m] for u, v, m in g.edges),
        key=lambda e: (pos[e[0]], pos[e[1]]),
    )
    return {"vertices": verts, "edges": edges}


def rational_json(value: Fraction | int) -> str:
    return format_rational(Fraction(value))
