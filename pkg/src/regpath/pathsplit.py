"""Exact enumeration of 2-path edge splits for small edge sets.

Workhorse behind the 2-path repair kernels. The verifier keeps its own
independent enumeration (verify.brute_force_two_path_split) so the two
routes can cross-check each other.
"""

from __future__ import annotations

from collections import defaultdict

from .graph import Edge, PathWalk, norm_edge


def as_path_vertices(edges: frozenset[Edge] | set[Edge]) -> tuple[int, ...] | None:
    """Vertex sequence if the edge set forms one simple path, else None."""
    if not edges:
        return None
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    ends = [v for v, nb in adj.items() if len(nb) == 1]
    if len(ends) != 2 or any(len(nb) > 2 for nb in adj.values()):
        return None
    start = min(ends)
    seq = [start]
    prev = -1
    cur = start
    for _ in range(len(edges)):
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return None
        prev, cur = cur, nxt[0]
        seq.append(cur)
    if len(seq) != len(adj):
        return None  # disconnected leftover component
    return tuple(seq)


def enumerate_two_path_splits(
    edges: frozenset[Edge], min_len: int, max_len: int
) -> list[tuple[PathWalk, PathWalk]]:
    """All unordered splits of `edges` into two simple paths whose lengths
    both lie in [min_len, max_len]. Deterministic order."""
    total = len(edges)
    if total < 2 * min_len or total > 2 * max_len:
        return []
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    odd = sorted(v for v, nb in adj.items() if len(nb) % 2)

    # The four path ends sit on odd-degree vertices once each; leftover end
    # slots pair up on even-degree vertices. One odd vertex (if any) is an
    # end of exactly one side, so a DFS rooted there sees every split once.
    starts = [odd[0]] if odd else sorted(adj)

    lo = max(min_len, total - max_len)
    hi = min(max_len, total - min_len)

    seen: set[frozenset[Edge]] = set()
    out: list[tuple[PathWalk, PathWalk]] = []

    def consider(first_edges: frozenset[Edge], first_seq: tuple[int, ...]) -> None:
        rest = edges - first_edges
        other = as_path_vertices(rest)
        if other is None:
            return
        key = min(first_edges, frozenset(rest), key=sorted)
        if key in seen:
            return
        seen.add(key)
        a, b = PathWalk(first_seq), PathWalk(other)
        if a.vertices > b.vertices:
            a, b = b, a
        out.append((a, b))

    for s in starts:
        stack: list[tuple[int, tuple[int, ...], frozenset[Edge]]] = [(s, (s,), frozenset())]
        while stack:
            v, seq, used = stack.pop()
            depth = len(seq) - 1
            if lo <= depth <= hi:
                consider(used, seq)
            if depth >= hi:
                continue
            for w in adj[v]:
                if w in seq:
                    continue
                e = norm_edge(v, w)
                if e in used:
                    continue
                stack.append((w, seq + (w,), used | {e}))

    out.sort(key=lambda ab: (ab[0].vertices, ab[1].vertices))
    return out
