"""Shared fixtures and samplers for the test suite."""

from __future__ import annotations

import random
from regpath.graph import CycleWalk, Edge, Graph, PathWalk, canonical_encode, norm_edge
from regpath.trails import AlternatingClosedTrail, Extension


def pair_key(a: PathWalk, b: PathWalk) -> tuple[bytes, bytes]:
    """Orientation- and order-insensitive identity of a 2-path split."""
    return tuple(sorted((canonical_encode(a), canonical_encode(b))))


def petersen() -> Graph:
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, 5 + i) for i in range(5)]
    )
    return Graph.from_edges(10, edges)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def brute_force_girth(g: Graph) -> float:
    """Independent oracle: enumerate all simple cycles by rooted DFS where
    the root is the cycle's smallest vertex."""
    best = float("inf")

    def dfs(root: int, v: int, visited: set[int], depth: int):
        nonlocal best
        for w in g.adj[v]:
            if w == root and depth >= 3:
                best = min(best, depth)
            elif w > root and w not in visited and depth + 1 < best:
                visited.add(w)
                dfs(root, w, visited, depth + 1)
                visited.discard(w)

    for root in range(g.n):
        dfs(root, root, {root}, 1)
    return best


def exceptional_extension(with_left_flank: bool = False) -> Extension:
    """The rigid k=3 obstruction: P = 0..5, P' = (1,6,3,7,5,8) joined by the
    matching edge (1,5), with the onward matching edge (3,8) folding back."""
    P = PathWalk((0, 1, 2, 3, 4, 5))
    Pp = PathWalk((1, 6, 3, 7, 5, 8))
    return Extension(
        paths=(P, Pp),
        links=((1, 5),),
        left=(0, 9) if with_left_flank else None,
        right=(3, 8),
    )


def trapped_pair_extension() -> Extension:
    """A trapped path-link-path core sharing three vertices, no flanks:
    decomposes into lengths {5, 6} (never 7)."""
    P = PathWalk((0, 1, 2, 3, 4, 5))
    Pp = PathWalk((1, 6, 3, 7, 5, 8))
    return Extension(paths=(P, Pp), links=((1, 5),))


def cyclic_trapped_trail() -> AlternatingClosedTrail:
    """Three paths in a ring with every link trapped (r = 3, k = 3)."""
    A = PathWalk((0, 1, 2, 3, 4, 5))
    B = PathWalk((1, 6, 7, 5, 8, 9))
    C = PathWalk((7, 10, 0, 9, 11, 3))
    return AlternatingClosedTrail((A, B, C), ((1, 5), (7, 9), (0, 3)))


def find_cycles_of_length(g: Graph, length: int, cap: int = 4000) -> list[CycleWalk]:
    """Simple cycles of exactly the given length, canonical order, capped."""
    out: list[CycleWalk] = []

    def dfs(root: int, v: int, seq: list[int]):
        if len(out) >= cap:
            return
        for w in g.adj[v]:
            if len(seq) == length:
                if w == root and seq[1] < seq[-1]:  # one orientation only
                    out.append(CycleWalk(tuple(seq)))
                continue
            if w > root and w not in seq:
                seq.append(w)
                dfs(root, w, seq)
                seq.pop()

    for root in range(g.n):
        dfs(root, root, [root])
        if len(out) >= cap:
            break
    return out


def random_simple_path(
    g: Graph, start: int, rng: random.Random, length: int, avoid_edges: frozenset[Edge]
) -> PathWalk | None:
    """One uniform-ish simple path of exactly `length` edges from `start`
    avoiding the given edges, via randomized DFS."""
    seq = [start]

    def dfs(v: int) -> bool:
        if len(seq) == length + 1:
            return True
        nbrs = [w for w in g.adj[v] if w not in seq and norm_edge(v, w) not in avoid_edges]
        rng.shuffle(nbrs)
        for w in nbrs:
            seq.append(w)
            if dfs(w):
                return True
            seq.pop()
        return False

    if dfs(start):
        return PathWalk(tuple(seq))
    return None


def sample_chordal_paths(g: Graph, k: int, rng: random.Random, count: int):
    """(cycle, path) pairs with both path ends on the cycle and edges
    disjoint from it; girth is inherited from the host."""
    cycles = find_cycles_of_length(g, 2 * k)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 60:
        attempts += 1
        c = cycles[rng.randrange(len(cycles))]
        a = rng.choice(c.vertices)
        length = rng.randrange(1, 2 * k + 2)
        p = random_simple_path(g, a, rng, length, c.edge_set)
        if p is None or p.last not in c.vertex_set or p.last == p.first:
            continue
        out.append((c, p))
    return out


def sample_interior_paths(g: Graph, k: int, rng: random.Random, count: int):
    """(cycle, path) pairs: path length in {2k-1, 2k, 2k+1}, shares a vertex
    with the cycle, no end on it, edge-disjoint from it."""
    cycles = find_cycles_of_length(g, 2 * k)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 120:
        attempts += 1
        c = cycles[rng.randrange(len(cycles))]
        start = rng.randrange(g.n)
        length = rng.choice((2 * k - 1, 2 * k, 2 * k + 1))
        p = random_simple_path(g, start, rng, length, c.edge_set)
        if p is None:
            continue
        if not (p.vertex_set & c.vertex_set):
            continue
        if p.first in c.vertex_set or p.last in c.vertex_set:
            continue
        out.append((c, p))
    return out


def random_cycle_through(
    g: Graph, v: int, length: int, rng: random.Random, avoid_edges: frozenset[Edge] = frozenset()
) -> CycleWalk | None:
    """One random simple cycle of the given length through v."""

    def dfs(cur: int, seq: list[int]) -> tuple[int, ...] | None:
        nbrs = [w for w in g.adj[cur] if norm_edge(cur, w) not in avoid_edges]
        rng.shuffle(nbrs)
        for w in nbrs:
            if len(seq) == length:
                if w == v:
                    return tuple(seq)
                continue
            if w != v and w not in seq:
                seq.append(w)
                found = dfs(w, seq)
                if found:
                    return found
                seq.pop()
        return None

    found = dfs(v, [v])
    return CycleWalk(found) if found else None


def sample_cycle_pairs(g: Graph, k: int, rng: random.Random, count: int):
    """Vertex-intersecting, edge-disjoint 2k-cycle pairs from the host,
    via independent random draws through a shared vertex."""
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 20:
        attempts += 1
        v = rng.randrange(g.n)
        c1 = random_cycle_through(g, v, 2 * k, rng)
        if c1 is None:
            continue
        c2 = random_cycle_through(g, v, 2 * k, rng, avoid_edges=c1.edge_set)
        if c2 is None or (c1.edge_set & c2.edge_set):
            continue
        out.append((c1, c2))
    return out


def all_pair_extensions(w: AlternatingClosedTrail):
    """Path-link-path extensions of the trail within the repair kernel's
    domain: every flank pattern over trapped cores (the trapped-sequence
    extensions), plus each nice core bare. Flanked nice cores are excluded:
    a flank may fold back into a vertex shared by both paths, and the
    degree-5 vertex it creates defeats any 2-path split."""
    from regpath.trails import classify_link, LinkClass

    exts = []
    r = w.r
    if r < 2:
        return exts
    for i in range(r):
        core = (w.path(i), w.path(i + 1))
        link = (w.link(i),)
        trapped = classify_link(core[0], link[0], core[1]) is LinkClass.TRAPPED
        combos = [(None, None)]
        if trapped:
            left, right = w.link(i - 1), w.link(i + 1)
            combos += [(left, None), (None, right)]
            if left != right:
                combos.append((left, right))
        for lf, rf in combos:
            exts.append(Extension(paths=core, links=link, left=lf, right=rf))
    return exts
