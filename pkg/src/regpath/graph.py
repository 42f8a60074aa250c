"""Core graph and walk types, girth computation, instance validation, canonical encodings.

Vertices are dense integer ids 0..n-1; edges are normalized (min, max) pairs.
All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import ValidationError

Edge = tuple[int, int]

#: Girth value for acyclic graphs; compares above every integer.
UNBOUNDED = math.inf


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValidationError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with sorted adjacency tuples."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValidationError(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def _adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def edges(self) -> list[Edge]:
        return sorted(self.edge_set)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        drop = {norm_edge(u, v) for u, v in edges}
        missing = drop - self.edge_set
        if missing:
            raise ValidationError(f"cannot remove absent edges {sorted(missing)}")
        return Graph.from_edges(self.n, self.edge_set - drop)

    def bipartition(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """Two-color the graph; None if an odd cycle exists."""
        color = [-1] * self.n
        for root in range(self.n):
            if color[root] != -1:
                continue
            color[root] = 0
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if color[y] == -1:
                        color[y] = color[x] ^ 1
                        stack.append(y)
                    elif color[y] == color[x]:
                        return None
        side0 = tuple(v for v in range(self.n) if color[v] == 0)
        side1 = tuple(v for v in range(self.n) if color[v] == 1)
        return side0, side1


@dataclass(frozen=True)
class PathWalk:
    """A simple path given as its ordered vertex sequence (length = #edges >= 1)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValidationError("a path needs at least one edge")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError(f"repeated vertex in path {self.vertices}")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def ends(self) -> frozenset[int]:
        return frozenset((self.first, self.last))

    @cached_property
    def internal(self) -> frozenset[int]:
        return frozenset(self.vertices[1:-1])

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        vs = self.vertices
        return frozenset(norm_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def reversed(self) -> "PathWalk":
        return PathWalk(self.vertices[::-1])

    def validate_in(self, g: Graph) -> None:
        vs = self.vertices
        for i in range(len(vs) - 1):
            if not g.has_edge(vs[i], vs[i + 1]):
                raise ValidationError(f"non-edge ({vs[i]}, {vs[i + 1]}) in path")


@dataclass(frozen=True)
class Trail:
    """An edge-distinct walk; vertices may repeat. Closed iff first == last."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValidationError("a trail needs at least one edge")
        es = [norm_edge(self.vertices[i], self.vertices[i + 1]) for i in range(len(self.vertices) - 1)]
        if len(set(es)) != len(es):
            raise ValidationError("repeated edge in trail")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        vs = self.vertices
        return frozenset(norm_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))


@dataclass(frozen=True)
class CycleWalk:
    """A simple cycle given by its vertices once, without the closing repeat."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValidationError("a cycle needs at least three vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError(f"repeated vertex in cycle {self.vertices}")

    @property
    def length(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        vs = self.vertices
        return frozenset(norm_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def validate_in(self, g: Graph) -> None:
        vs = self.vertices
        for i in range(len(vs)):
            if not g.has_edge(vs[i], vs[(i + 1) % len(vs)]):
                raise ValidationError(f"non-edge ({vs[i]}, {vs[(i + 1) % len(vs)]}) in cycle")


Element = Union[PathWalk, CycleWalk]


@dataclass(frozen=True)
class Decomposition:
    """A set of edge-disjoint paths and cycles, with the target parameter k."""

    elements: tuple[Element, ...]
    k: int

    @property
    def paths(self) -> tuple[PathWalk, ...]:
        return tuple(e for e in self.elements if isinstance(e, PathWalk))

    @property
    def cycles(self) -> tuple[CycleWalk, ...]:
        return tuple(e for e in self.elements if isinstance(e, CycleWalk))

    def length_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self.paths:
            counts[p.length] = counts.get(p.length, 0) + 1
        return counts

    def end_counts(self) -> dict[int, tuple[int, int]]:
        """Per vertex: (#path-ends of length <= 2k, #path-ends of length >= 2k+1)."""
        out: dict[int, tuple[int, int]] = {}
        for p in self.paths:
            hi = p.length >= 2 * self.k + 1
            for v in (p.first, p.last):
                lo_c, hi_c = out.get(v, (0, 0))
                out[v] = (lo_c, hi_c + 1) if hi else (lo_c + 1, hi_c)
        return out


def canonical_encode(obj) -> bytes:
    """Deterministic byte encoding, invariant under path reversal, cycle
    rotation/reflection, and element reordering of a decomposition."""
    if isinstance(obj, PathWalk):
        return b"P:" + _seq_bytes(min(obj.vertices, obj.vertices[::-1]))
    if isinstance(obj, Trail):
        return b"T:" + _seq_bytes(min(obj.vertices, obj.vertices[::-1]))
    if isinstance(obj, CycleWalk):
        return b"C:" + _seq_bytes(_canonical_rotation(obj.vertices))
    if isinstance(obj, Decomposition):
        parts = sorted(canonical_encode(e) for e in obj.elements)
        return b"D[" + b";".join(parts) + b"]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _seq_bytes(seq: tuple[int, ...]) -> bytes:
    return ",".join(map(str, seq)).encode()


def _canonical_rotation(vs: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for seq in (vs, vs[::-1]):
        for i in range(len(seq)):
            rot = seq[i:] + seq[:i]
            if best is None or rot < best:
                best = rot
    return best


def compute_girth(g: Graph) -> int | float:
    """Length of a shortest cycle; UNBOUNDED for forests.

    BFS from every vertex; a non-tree edge closing at depths d1, d2 witnesses
    a cycle of length d1 + d2 + 1 through the root. O(n * m).
    """
    best: int | float = UNBOUNDED
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt: list[int] = []
            for x in frontier:
                if 2 * dist[x] >= best:
                    continue
                for y in g.adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        nxt.append(y)
                    elif parent[x] != y:
                        cand = dist[x] + dist[y] + 1
                        if cand < best:
                            best = cand
            frontier = nxt
    return best


@dataclass(frozen=True)
class InstanceSpec:
    """A problem instance: parameter k, the host graph, and (optionally) the
    two disjoint perfect matchings declared by the instance file."""

    k: int
    graph: Graph
    m1: frozenset[Edge] | None = None
    m2: frozenset[Edge] | None = None


@dataclass(frozen=True)
class ValidationReport:
    """Per-condition membership verdicts for the input graph class."""

    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, passed, detail in self.checks if not passed]

    def summary(self) -> str:
        lines = [f"[{'ok' if passed else 'FAIL'}] {name}: {detail}" for name, passed, detail in self.checks]
        return "\n".join(lines)


def _matching_check(g: Graph, m: frozenset[Edge], name: str) -> Iterator[tuple[str, bool, str]]:
    seen: set[int] = set()
    disjoint = True
    in_graph = True
    for u, v in m:
        if u in seen or v in seen:
            disjoint = False
        seen.update((u, v))
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            in_graph = False
    yield (f"{name} edges in graph", in_graph, "all edges present" if in_graph else "edge not in graph")
    yield (f"{name} is a matching", disjoint, "vertex-disjoint" if disjoint else "shared vertex")
    perfect = disjoint and len(seen) == g.n
    yield (f"{name} is perfect", perfect, f"covers {len(seen)}/{g.n} vertices")


def validate_instance(spec: InstanceSpec) -> ValidationReport:
    """Check membership conditions: 2k-regularity, girth >= 2k-2, and (when
    supplied) that m1, m2 are disjoint perfect matchings."""
    g, k = spec.graph, spec.k
    checks: list[tuple[str, bool, str]] = []

    checks.append(("k >= 3", k >= 3, f"k = {k}"))

    degs = {g.degree(v) for v in range(g.n)} or {0}
    regular = degs == {2 * k}
    checks.append(("2k-regular", regular, f"degrees {sorted(degs)} vs required {2 * k}"))

    girth = compute_girth(g)
    checks.append(
        ("girth >= 2k-2", girth >= 2 * k - 2, f"girth {girth} vs required >= {2 * k - 2}")
    )

    checks.append(("even vertex count", g.n % 2 == 0, f"n = {g.n}"))

    for name, m in (("m1", spec.m1), ("m2", spec.m2)):
        if m is not None:
            checks.extend(_matching_check(g, m, name))
    if spec.m1 is not None and spec.m2 is not None:
        shared = spec.m1 & spec.m2
        checks.append(("m1, m2 disjoint", not shared, f"{len(shared)} shared edges"))

    return ValidationReport(tuple(checks))
