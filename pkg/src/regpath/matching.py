"""Matchings: maximum matching (bipartite augmenting paths / blossom),
disjoint perfect-matching pairs, and bipartite 1-factorization."""

from __future__ import annotations

from collections import deque
from typing import Iterator

from .errors import PreconditionError
from .graph import Edge, Graph, norm_edge

Matching = frozenset[Edge]


def is_matching(edges) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u in seen or v in seen or u == v:
            return False
        seen.update((u, v))
    return True


def is_perfect_matching(g: Graph, edges) -> bool:
    if not is_matching(edges):
        return False
    covered = {v for e in edges for v in e}
    return len(covered) == g.n and all(g.has_edge(u, v) for u, v in edges)


def maximum_matching(g: Graph) -> Matching:
    """A maximum-cardinality matching; deterministic given the canonical
    vertex order. Bipartite inputs use alternating-path search, general
    inputs the blossom algorithm."""
    if g.n == 0:
        return frozenset()
    sides = g.bipartition()
    mate = _bipartite_mates(g, sides[0]) if sides else _blossom_mates(g)
    return frozenset(norm_edge(v, mate[v]) for v in range(g.n) if mate[v] > v)


def _bipartite_mates(g: Graph, left: tuple[int, ...]) -> list[int]:
    mate = [-1] * g.n

    def try_augment(v: int, visited: set[int]) -> bool:
        for to in g.adj[v]:
            if to in visited:
                continue
            visited.add(to)
            if mate[to] == -1 or try_augment(mate[to], visited):
                mate[v] = to
                mate[to] = v
                return True
        return False

    for v in sorted(left):
        if mate[v] == -1:
            try_augment(v, set())
    return mate


def _blossom_mates(g: Graph) -> list[int]:
    # Classic O(V^3) blossom contraction via base[] relabeling.
    n = g.n
    mate = [-1] * n
    for u in range(n):  # greedy seed
        if mate[u] == -1:
            for v in g.adj[u]:
                if mate[v] == -1:
                    mate[u], mate[v] = v, u
                    break

    def find_augmenting(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])

        def lca(a: int, b: int) -> int:
            on_path = [False] * n
            while True:
                a = base[a]
                on_path[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if on_path[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = True
                blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while q:
            v = q.popleft()
            for to in g.adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        u2 = to
                        while u2 != -1:
                            pv = parent[u2]
                            ppv = mate[pv]
                            mate[u2] = pv
                            mate[pv] = u2
                            u2 = ppv
                        return True
                    used[mate[to]] = True
                    q.append(mate[to])
        return False

    for u in range(n):
        if mate[u] == -1:
            find_augmenting(u)
    return mate


def find_two_disjoint_perfect_matchings(g: Graph) -> tuple[Matching, Matching] | None:
    """Two edge-disjoint perfect matchings, or None if no such pair exists.

    Backtracks over perfect matchings M1 in canonical edge order and tests
    whether g - M1 still has a perfect matching; greedy removal of an
    arbitrary first matching can destroy all second matchings, so the full
    search is required for correctness.
    """
    if g.n % 2:
        return None
    if g.n == 0:
        return frozenset(), frozenset()

    chosen: list[Edge] = []
    covered: set[int] = set()

    def backtrack() -> tuple[Matching, Matching] | None:
        if len(covered) == g.n:
            m1 = frozenset(chosen)
            m2 = maximum_matching(g.without_edges(m1))
            if 2 * len(m2) == g.n:
                return m1, m2
            return None
        u = min(v for v in range(g.n) if v not in covered)
        for w in g.adj[u]:
            if w in covered:
                continue
            covered.update((u, w))
            chosen.append(norm_edge(u, w))
            found = backtrack()
            chosen.pop()
            covered.difference_update((u, w))
            if found:
                return found
        return None

    return backtrack()


def enumerate_perfect_matchings(g: Graph, limit: int | None = None) -> Iterator[Matching]:
    """All perfect matchings in canonical order; small-scale oracle for tests."""
    if g.n % 2:
        return
    count = 0
    chosen: list[Edge] = []
    covered: set[int] = set()

    def rec() -> Iterator[Matching]:
        nonlocal count
        if limit is not None and count >= limit:
            return
        if len(covered) == g.n:
            count += 1
            yield frozenset(chosen)
            return
        u = min(v for v in range(g.n) if v not in covered)
        for w in g.adj[u]:
            if w in covered:
                continue
            covered.update((u, w))
            chosen.append(norm_edge(u, w))
            yield from rec()
            chosen.pop()
            covered.difference_update((u, w))

    yield from rec()


def bipartite_one_factorization(g: Graph) -> list[Matching]:
    """Split a d-regular bipartite graph into d perfect matchings."""
    if g.n == 0:
        return []
    if g.bipartition() is None:
        raise PreconditionError("1-factorization requires a bipartite graph")
    degs = {g.degree(v) for v in range(g.n)}
    if len(degs) != 1:
        raise PreconditionError(f"graph is not regular (degrees {sorted(degs)})")
    d = degs.pop()
    factors: list[Matching] = []
    work = g
    for _ in range(d):
        m = maximum_matching(work)
        if 2 * len(m) != g.n:
            raise PreconditionError("regular bipartite graph failed to factorize")
        factors.append(m)
        work = work.without_edges(m)
    return factors
