"""Independent certificate checking and brute-force oracles.

Nothing here shares search or accounting code with the constructive engines:
edge partitions, balance counts, and 2-path splits are all recomputed from
raw edge lists by different algorithms, so a shared bug cannot self-certify.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import SearchExhausted
from .graph import (
    CycleWalk,
    Decomposition,
    Edge,
    Graph,
    PathWalk,
    norm_edge,
)

DEFAULT_ORACLE_EDGE_BOUND = 40
DEFAULT_ORACLE_NODE_BUDGET = 10**7


def oracle_budget_from_env() -> int:
    raw = os.environ.get("REGPATH_ORACLE_BUDGET")
    return int(raw) if raw else DEFAULT_ORACLE_NODE_BUDGET


class Level(enum.Enum):
    PARTITION = "partition"
    THEOREM2 = "theorem-2"
    BALANCED = "balanced"
    COMPLETE = "complete"


@dataclass(frozen=True)
class VerificationReport:
    level: Level
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, passed, detail in self.checks if not passed]

    def to_json(self) -> str:
        return json.dumps(
            {
                "level": self.level.value,
                "ok": self.ok,
                "checks": [
                    {"name": n, "ok": p, "detail": d} for n, p, d in self.checks
                ],
            },
            indent=2,
        )


def _element_edges(el) -> list[Edge]:
    vs = el.vertices
    if isinstance(el, CycleWalk):
        return [norm_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
    return [norm_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


def _balance_deficits(d: Decomposition) -> dict[int, int]:
    """Per vertex: (#long-path ends) - (#short-or-medium ends), recomputed
    from the raw vertex sequences."""
    score: dict[int, int] = {}
    for el in d.elements:
        if isinstance(el, CycleWalk):
            continue
        delta = 1 if len(el.vertices) - 1 >= 2 * d.k + 1 else -1
        for v in (el.vertices[0], el.vertices[-1]):
            score[v] = score.get(v, 0) + delta
    return {v: s for v, s in score.items() if s > 0}


def verify_decomposition(g: Graph, d: Decomposition, level: Level = Level.THEOREM2) -> VerificationReport:
    """Recompute every requested invariant from scratch; failures land in the
    report, never in exceptions."""
    checks: list[tuple[str, bool, str]] = []
    k = d.k

    valid = True
    detail = "all elements are simple and lie in the graph"
    for el in d.elements:
        vs = el.vertices
        closed = isinstance(el, CycleWalk)
        pairs = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs) - (0 if closed else 1))]
        if len(set(vs)) != len(vs) or any(not g.has_edge(u, v) for u, v in pairs):
            valid = False
            detail = f"bad element {vs}"
            break
    checks.append(("elements valid", valid, detail))

    all_edges: list[Edge] = []
    for el in d.elements:
        all_edges.extend(_element_edges(el))
    dup_free = len(all_edges) == len(set(all_edges))
    cover = set(all_edges) == set(g.edge_set)
    checks.append(
        (
            "edge partition",
            dup_free and cover,
            f"{len(all_edges)} element edges vs {g.m} graph edges"
            + ("" if dup_free else "; duplicates present"),
        )
    )

    paths = [el for el in d.elements if isinstance(el, PathWalk)]
    cycles = [el for el in d.elements if isinstance(el, CycleWalk)]
    lengths = [p.length for p in paths]
    n_short = sum(1 for l in lengths if l == 2 * k - 1)
    n_long = sum(1 for l in lengths if l == 2 * k + 1)

    if level in (Level.THEOREM2, Level.BALANCED):
        checks.append(
            ("element count n/2", len(d.elements) == g.n // 2, f"{len(d.elements)} vs {g.n // 2}")
        )
    if level is Level.THEOREM2:
        checks.append(("paths only", not cycles, f"{len(cycles)} cycles present"))
    if level in (Level.THEOREM2, Level.BALANCED, Level.COMPLETE):
        in_range = all(l in (2 * k - 1, 2 * k, 2 * k + 1) for l in lengths)
        checks.append(("path lengths in {2k-1,2k,2k+1}", in_range, f"lengths {sorted(set(lengths))}"))
        checks.append(
            ("count(2k-1) == count(2k+1)", n_short == n_long, f"{n_short} vs {n_long}")
        )
    if level in (Level.BALANCED, Level.COMPLETE):
        bad_cycle = [c.length for c in cycles if c.length != 2 * k]
        checks.append(("cycles have length 2k", not bad_cycle, f"off lengths {bad_cycle}"))
    if level is Level.BALANCED:
        deficits = _balance_deficits(d)
        checks.append(
            ("k-balanced at every vertex", not deficits, f"deficits at {sorted(deficits)[:5]}")
        )
    if level is Level.COMPLETE:
        seen: set[int] = set()
        disjoint = True
        for c in cycles:
            if seen & set(c.vertices):
                disjoint = False
                break
            seen.update(c.vertices)
        checks.append(("cycles vertex-disjoint", disjoint, f"{len(cycles)} cycles"))
        deficits = _balance_deficits(d)
        cycle_vs = {v for c in cycles for v in c.vertices}
        bad = sorted(v for v in deficits if v in cycle_vs)
        checks.append(("k-balanced at cycle vertices", not bad, f"deficits at {bad[:5]}"))

    return VerificationReport(level, tuple(checks))


def _subset_is_path(edges: list[Edge]) -> tuple[int, ...] | None:
    """Vertex order if the edges form one simple path; independent of the
    engine-side enumeration."""
    if not edges:
        return None
    deg: dict[int, int] = {}
    nbr: dict[int, list[int]] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
        if deg[u] > 2 or deg[v] > 2:
            return None
    ones = sorted(v for v, c in deg.items() if c == 1)
    if len(ones) != 2:
        return None
    seq = [ones[0]]
    prev = None
    while True:
        cur = seq[-1]
        options = [w for w in nbr[cur] if w != prev]
        if not options:
            break
        prev = cur
        seq.append(options[0])
        if len(seq) > len(edges) + 1:
            return None
    if len(seq) != len(edges) + 1 or len(set(seq)) != len(seq):
        return None
    return tuple(seq)


def brute_force_two_path_split(
    edges: Iterable[Edge],
    predicate: Callable[[PathWalk, PathWalk], bool] | None = None,
) -> list[tuple[PathWalk, PathWalk]]:
    """Complete enumeration of splits of `edges` into two simple paths,
    optionally filtered by a contract predicate.

    Branch-and-bound over per-edge side assignments with degree-cap pruning;
    the first edge is pinned to side A to halve the space.
    """
    es = sorted({norm_edge(u, v) for u, v in edges})
    if len(es) < 2:
        return []
    deg_a: dict[int, int] = {}
    deg_b: dict[int, int] = {}
    sides: list[int] = []
    out: list[tuple[PathWalk, PathWalk]] = []

    def assign(deg: dict[int, int], e: Edge) -> bool:
        if deg.get(e[0], 0) >= 2 or deg.get(e[1], 0) >= 2:
            return False
        deg[e[0]] = deg.get(e[0], 0) + 1
        deg[e[1]] = deg.get(e[1], 0) + 1
        return True

    def unassign(deg: dict[int, int], e: Edge) -> None:
        deg[e[0]] -= 1
        deg[e[1]] -= 1

    def rec(i: int) -> None:
        if i == len(es):
            a_edges = [e for e, s in zip(es, sides) if s == 0]
            b_edges = [e for e, s in zip(es, sides) if s == 1]
            pa = _subset_is_path(a_edges)
            pb = _subset_is_path(b_edges)
            if pa is None or pb is None:
                return
            a, b = PathWalk(pa), PathWalk(pb)
            if a.vertices > b.vertices:
                a, b = b, a
            if predicate is None or predicate(a, b):
                out.append((a, b))
            return
        e = es[i]
        for side, deg in ((0, deg_a), (1, deg_b)):
            if i == 0 and side == 1:
                continue
            if assign(deg, e):
                sides.append(side)
                rec(i + 1)
                sides.pop()
                unassign(deg, e)

    rec(0)
    out.sort(key=lambda ab: (ab[0].vertices, ab[1].vertices))
    return out


@dataclass(frozen=True)
class PathConstraints:
    """Target shape for the exhaustive path-decomposition oracle."""

    num_paths: int | None = None
    allowed_lengths: frozenset[int] | None = None
    equal_extreme_counts: bool = False  # count(min allowed) == count(max allowed)


def brute_force_path_decomposition(
    g: Graph,
    k: int,
    constraints: PathConstraints,
    edge_bound: int = DEFAULT_ORACLE_EDGE_BOUND,
    node_budget: int | None = None,
) -> Decomposition | None:
    """Exhaustive backtracking for a path decomposition meeting the
    constraints; None iff none exists. Desk-scale only by design."""
    if g.m > edge_bound:
        raise SearchExhausted(f"oracle edge bound {edge_bound} exceeded ({g.m} edges)")
    budget = node_budget if node_budget is not None else oracle_budget_from_env()
    if g.m == 0:
        return Decomposition((), k)

    lengths = constraints.allowed_lengths or frozenset(range(1, g.m + 1))
    lo, hi = min(lengths), max(lengths)
    rem: dict[int, set[int]] = {v: set(g.adj[v]) for v in range(g.n)}
    rem_count = g.m
    chosen: list[tuple[int, ...]] = []
    nodes = 0

    def feasible() -> bool:
        if constraints.num_paths is not None:
            left = constraints.num_paths - len(chosen)
            if left < 0 or rem_count > left * hi or rem_count < left * lo:
                return False
        return True

    def pick_edge() -> Edge | None:
        for u in range(g.n):
            if rem[u]:
                return norm_edge(u, min(rem[u]))
        return None

    def extensions(seq: tuple[int, ...]) -> list[tuple[int, ...]]:
        exts = []
        for w in sorted(rem[seq[-1]]):
            if w not in seq:
                exts.append(seq + (w,))
        return exts

    def remove(seq: tuple[int, ...]) -> None:
        nonlocal rem_count
        for i in range(len(seq) - 1):
            rem[seq[i]].discard(seq[i + 1])
            rem[seq[i + 1]].discard(seq[i])
        rem_count -= len(seq) - 1

    def restore(seq: tuple[int, ...]) -> None:
        nonlocal rem_count
        for i in range(len(seq) - 1):
            rem[seq[i]].add(seq[i + 1])
            rem[seq[i + 1]].add(seq[i])
        rem_count += len(seq) - 1

    def final_ok() -> bool:
        if constraints.num_paths is not None and len(chosen) != constraints.num_paths:
            return False
        if constraints.equal_extreme_counts:
            ls = [len(s) - 1 for s in chosen]
            if ls.count(lo) != ls.count(hi):
                return False
        return True

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchExhausted("oracle node budget exceeded", {"nodes": nodes})
        if rem_count == 0:
            return final_ok()
        if not feasible():
            return False
        anchor = pick_edge()
        u, v = anchor
        # Every path through the anchor edge, grown right from v then left from u.
        stack: list[tuple[tuple[int, ...], bool]] = [((u, v), False)]
        cands: list[tuple[int, ...]] = []
        while stack:
            seq, flipped = stack.pop()
            if len(seq) - 1 in lengths:
                cands.append(seq)
            if len(seq) - 1 < hi:
                for ext in extensions(seq):
                    stack.append((ext, flipped))
                if not flipped:
                    stack.append((seq[::-1], True))
        seen: set[frozenset[Edge]] = set()
        for seq in sorted(cands):
            key = frozenset(norm_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1))
            if key in seen:
                continue
            seen.add(key)
            remove(seq)
            chosen.append(seq)
            if rec():
                return True
            chosen.pop()
            restore(seq)
        return False

    if rec():
        return Decomposition(tuple(PathWalk(s) for s in chosen), k)
    return None
