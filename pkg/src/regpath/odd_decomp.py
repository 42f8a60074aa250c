"""Decompose a (2k-1)-regular graph into paths of length 2k-1 such that
every vertex is the end vertex of exactly one path.

Any decomposition of a (2k-1)-regular graph into length-(2k-1) paths has the
endpoint property automatically: each vertex has odd degree, so it ends an
odd number of paths, and the n available end slots force exactly one each.
The search still enforces it online because it prunes hard.

Two routes:
  * bipartite inputs first try a 1-factorization "rainbow walk" construction
    (walk the color classes in a fixed order from every left vertex; each
    color permutation either yields simple paths everywhere or is rejected);
    several deterministic relabelings vary the factorization itself;
  * exact backtracking with most-constrained-endpoint-first ordering, parity
    forward-checking, and a deterministic restart schedule that reshuffles
    tie-breaking each attempt (runtime only; the node budget is global).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import permutations

from .errors import PreconditionError, SearchExhausted, ValidationError
from .graph import Edge, Graph, PathWalk, compute_girth
from .matching import bipartite_one_factorization

DEFAULT_NODE_BUDGET = 10**8
_MAX_RAINBOW_PERMS = 50_000
_RAINBOW_VARIANTS = 24
_RESTART_BASE_NODES = 60_000


@dataclass(frozen=True)
class OddDecomposition:
    k: int
    paths: tuple[PathWalk, ...]
    endpoint_index: dict[int, int]  # vertex -> index of the unique path ending there

    @property
    def n_paths(self) -> int:
        return len(self.paths)


@dataclass
class SearchStats:
    nodes: int = 0
    budget: int = DEFAULT_NODE_BUDGET
    rainbow_permutations_tried: int = 0
    used_rainbow: bool = False

    def as_dict(self) -> dict:
        return dict(
            nodes=self.nodes,
            budget=self.budget,
            rainbow_permutations_tried=self.rainbow_permutations_tried,
            used_rainbow=self.used_rainbow,
        )


def validate_odd_decomposition(g: Graph, dec: OddDecomposition) -> None:
    """Recheck every type invariant from the raw data."""
    k = dec.k
    want_len = 2 * k - 1
    all_edges: set[Edge] = set()
    for p in dec.paths:
        p.validate_in(g)
        if p.length != want_len:
            raise ValidationError(f"path length {p.length} != {want_len}")
        if all_edges & p.edge_set:
            raise ValidationError("paths share an edge")
        all_edges |= p.edge_set
    if all_edges != g.edge_set:
        raise ValidationError("paths do not partition the edge set")
    ends: dict[int, int] = {}
    for i, p in enumerate(dec.paths):
        for v in (p.first, p.last):
            if v in ends:
                raise ValidationError(f"vertex {v} ends two paths")
            ends[v] = i
    if set(ends) != set(range(g.n)):
        raise ValidationError("some vertex ends no path")
    if ends != dec.endpoint_index:
        raise ValidationError("endpoint_index inconsistent with paths")


def node_budget_from_env() -> int:
    raw = os.environ.get("REGPATH_SEARCH_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def decompose_odd_regular(
    gprime: Graph, k: int, node_budget: int | None = None
) -> tuple[OddDecomposition, SearchStats]:
    """Find the path decomposition; raises SearchExhausted when the node
    budget runs out (the partial statistics ride along on the exception)."""
    d = 2 * k - 1
    if any(gprime.degree(v) != d for v in range(gprime.n)) or gprime.n == 0:
        raise PreconditionError(f"input is not {d}-regular")
    if gprime.n % 2:
        raise PreconditionError("odd vertex count")
    girth = compute_girth(gprime)
    if girth < 2 * k - 2:
        raise PreconditionError(f"girth {girth} < {2 * k - 2}")

    stats = SearchStats(budget=node_budget if node_budget is not None else node_budget_from_env())

    sides = gprime.bipartition()
    if sides is not None:
        paths = _rainbow_paths(gprime, sides, d, stats)
        if paths is not None:
            stats.used_rainbow = True
            dec = _finish(k, paths)
            validate_odd_decomposition(gprime, dec)
            return dec, stats

    paths = _backtrack_paths(gprime, d, stats)
    dec = _finish(k, paths)
    validate_odd_decomposition(gprime, dec)
    return dec, stats


def _finish(k: int, paths: list[tuple[int, ...]]) -> OddDecomposition:
    walks = tuple(PathWalk(p) for p in paths)
    index = {v: i for i, w in enumerate(walks) for v in (w.first, w.last)}
    return OddDecomposition(k=k, paths=walks, endpoint_index=index)


def _variant_factorization(g: Graph, variant: int, d: int) -> list[dict[int, int]]:
    """Deterministic 1-factorization variant: factorize under a shuffled
    vertex relabeling, then map the colors back."""
    if variant == 0:
        perm = list(range(g.n))
    else:
        perm = list(range(g.n))
        random.Random(variant).shuffle(perm)
    inv = [0] * g.n
    for i, p in enumerate(perm):
        inv[p] = i
    relabeled = Graph.from_edges(g.n, [(inv[u], inv[v]) for u, v in g.edge_set])
    mate: list[dict[int, int]] = [{} for _ in range(d)]
    for i, m in enumerate(bipartite_one_factorization(relabeled)):
        for u, v in m:
            mate[i][perm[u]] = perm[v]
            mate[i][perm[v]] = perm[u]
    return mate


def _rainbow_paths(
    g: Graph, sides: tuple[tuple[int, ...], ...], d: int, stats: SearchStats
) -> list[tuple[int, ...]] | None:
    left = sorted(sides[0])
    for variant in range(_RAINBOW_VARIANTS):
        mate = _variant_factorization(g, variant, d)
        for perm in permutations(range(d)):
            stats.rainbow_permutations_tried += 1
            if stats.rainbow_permutations_tried > _MAX_RAINBOW_PERMS:
                return None
            walks: list[tuple[int, ...]] = []
            ok = True
            for a in left:
                seq = [a]
                v = a
                for color in perm:
                    v = mate[color][v]
                    seq.append(v)
                if len(set(seq)) != d + 1:
                    ok = False
                    break
                walks.append(tuple(seq))
            if ok:
                return walks
    return None


class _AttemptCap(Exception):
    """Internal: the current restart attempt hit its node cap."""


def _backtrack_paths(g: Graph, d: int, stats: SearchStats) -> list[tuple[int, ...]]:
    """Restart schedule over `_search_once`: attempt t reshuffles tie-breaks
    deterministically and caps nodes at base * 2^t; a capped attempt proves
    nothing, an uncapped exhaustion proves no decomposition exists."""
    attempt = 0
    while True:
        room = stats.budget - stats.nodes
        if room <= 0:
            raise SearchExhausted(f"node budget {stats.budget} exhausted", stats.as_dict())
        cap = stats.nodes + min(room, _RESTART_BASE_NODES << min(attempt, 14))
        prio = list(range(g.n))
        if attempt:
            random.Random(attempt).shuffle(prio)
        try:
            found = _search_once(g, d, stats, prio, cap)
        except _AttemptCap:
            if stats.nodes >= stats.budget:
                raise SearchExhausted(
                    f"node budget {stats.budget} exhausted", stats.as_dict()
                ) from None
            attempt += 1
            continue
        if found is None:
            raise SearchExhausted(
                f"no length-{d} path decomposition with the endpoint property exists",
                stats.as_dict(),
            )
        return found


def _search_once(
    g: Graph, d: int, stats: SearchStats, prio: list[int], node_cap: int
) -> list[tuple[int, ...]] | None:
    n = g.n
    rem: list[set[int]] = [set(g.adj[v]) for v in range(n)]
    rem_deg = [g.degree(v) for v in range(n)]
    need_end = [True] * n
    total_paths = g.m // d
    placed: list[tuple[int, ...]] = []

    def parity_ok(v: int) -> bool:
        # Settled vertices keep rem_deg parity equal to their end demand;
        # this single check also kills rem_deg == 0 with an unmet end.
        return rem_deg[v] % 2 == (1 if need_end[v] else 0)

    def pick_start() -> int | None:
        best = None
        best_key = (d + 1, n)
        for v in range(n):
            if need_end[v] and rem_deg[v] > 0 and (rem_deg[v], prio[v]) < best_key:
                best, best_key = v, (rem_deg[v], prio[v])
        return best

    def extend(seq: list[int], on_path: set[int]) -> bool:
        stats.nodes += 1
        if stats.nodes > node_cap:
            raise _AttemptCap
        v = seq[-1]
        if len(seq) == d + 1:
            if not need_end[v]:
                return False
            need_end[v] = False
            if parity_ok(v):
                placed.append(tuple(seq))
                if place_next():
                    return True
                placed.pop()
            need_end[v] = True
            return False
        nbrs = sorted((rem_deg[w], prio[w], w) for w in rem[v] if w not in on_path)
        for _, _, w in nbrs:
            rem[v].discard(w)
            rem[w].discard(v)
            rem_deg[v] -= 1
            rem_deg[w] -= 1
            # v is settled once we leave it (unless it is the live head again)
            if parity_ok(v) or len(seq) == 1:
                seq.append(w)
                on_path.add(w)
                if extend(seq, on_path):
                    return True
                on_path.discard(w)
                seq.pop()
            rem[v].add(w)
            rem[w].add(v)
            rem_deg[v] += 1
            rem_deg[w] += 1
        return False

    def place_next() -> bool:
        if len(placed) == total_paths:
            return True
        s = pick_start()
        if s is None:
            return False
        need_end[s] = False
        if extend([s], {s}):
            return True
        need_end[s] = True
        return False

    return placed if place_next() else None
