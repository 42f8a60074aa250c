"""Instance text format, decomposition JSON, and DOT export.

Instance files:
    # comment
    graph <n> <m> <k>
    e <u> <v>
    m1 <u> <v>
    m2 <u> <v>

Decomposition JSON: {"k": int, "elements": [{"type": "path"|"cycle",
"vertices": [...]}, ...]}, elements in canonical order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphFormatError
from .graph import (
    CycleWalk,
    Decomposition,
    Edge,
    Graph,
    InstanceSpec,
    PathWalk,
    canonical_encode,
    norm_edge,
)


def parse_instance_text(text: str) -> InstanceSpec:
    header: tuple[int, int, int] | None = None
    edges: list[Edge] = []
    m1: set[Edge] = set()
    m2: set[Edge] = set()

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "graph":
            if header is not None:
                raise GraphFormatError("duplicate graph header", ln)
            if len(args) != 3:
                raise GraphFormatError("graph header needs 'graph n m k'", ln)
            try:
                header = tuple(int(a) for a in args)  # type: ignore[assignment]
            except ValueError:
                raise GraphFormatError("non-integer in graph header", ln) from None
        elif kind in ("e", "m1", "m2"):
            if header is None:
                raise GraphFormatError("edge line before graph header", ln)
            if len(args) != 2:
                raise GraphFormatError(f"'{kind}' line needs two vertex ids", ln)
            try:
                u, v = int(args[0]), int(args[1])
            except ValueError:
                raise GraphFormatError("non-integer vertex id", ln) from None
            if not (0 <= u < header[0] and 0 <= v < header[0]) or u == v:
                raise GraphFormatError(f"bad edge ({u}, {v})", ln)
            target = {"e": edges, "m1": m1, "m2": m2}[kind]
            if kind == "e":
                edges.append(norm_edge(u, v))
            else:
                target.add(norm_edge(u, v))
        else:
            raise GraphFormatError(f"unknown line kind {kind!r}", ln)

    if header is None:
        raise GraphFormatError("missing graph header")
    n, m, k = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, file has {len(edges)}")
    g = Graph.from_edges(n, edges)
    return InstanceSpec(k=k, graph=g, m1=frozenset(m1) or None, m2=frozenset(m2) or None)


def parse_instance(path: str | Path) -> InstanceSpec:
    return parse_instance_text(Path(path).read_text())


def serialize_instance(spec: InstanceSpec) -> str:
    g = spec.graph
    lines = [f"graph {g.n} {g.m} {spec.k}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    if spec.m1:
        lines += [f"m1 {u} {v}" for u, v in sorted(spec.m1)]
    if spec.m2:
        lines += [f"m2 {u} {v}" for u, v in sorted(spec.m2)]
    return "\n".join(lines) + "\n"


def decomposition_to_json(d: Decomposition) -> str:
    elements = sorted(d.elements, key=canonical_encode)
    return json.dumps(
        {
            "k": d.k,
            "elements": [
                {
                    "type": "cycle" if isinstance(el, CycleWalk) else "path",
                    "vertices": list(el.vertices),
                }
                for el in elements
            ],
        },
        indent=2,
    )


def decomposition_from_json(text: str) -> Decomposition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"bad decomposition JSON: {exc}") from None
    try:
        k = int(data["k"])
        elements = []
        for item in data["elements"]:
            vs = tuple(int(v) for v in item["vertices"])
            if item["type"] == "cycle":
                elements.append(CycleWalk(vs))
            elif item["type"] == "path":
                elements.append(PathWalk(vs))
            else:
                raise GraphFormatError(f"unknown element type {item['type']!r}")
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"malformed decomposition JSON: {exc}") from None
    return Decomposition(tuple(elements), k)


_PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#808000", "#008080", "#9a6324", "#800000", "#000075",
)


def export_dot(spec: InstanceSpec, d: Decomposition | None = None) -> str:
    """Graphviz output; decomposition elements get distinct colors and edges
    of the removed matching are dashed."""
    g = spec.graph
    style: dict[Edge, str] = {}
    if d is not None:
        for i, el in enumerate(sorted(d.elements, key=canonical_encode)):
            color = _PALETTE[i % len(_PALETTE)]
            for e in el.edge_set:
                style[e] = f'color="{color}"'
    m1 = spec.m1 or frozenset()
    lines = ["graph decomposition {", "  node [shape=circle, fontsize=10];"]
    for u, v in g.edges():
        attrs = [style.get((u, v), 'color="#666666"')]
        if (u, v) in m1:
            attrs.append("style=dashed")
        lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
