"""Instance generators: complete bipartite, projective-plane incidence, and
random bipartite regular graphs, each shipped with two disjoint perfect
matchings and validated before being emitted."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import PreconditionError, RetryExhausted, ValidationError
from .graph import Edge, Graph, InstanceSpec, compute_girth, norm_edge, validate_instance
from .matching import maximum_matching

_FAMILIES = ("complete-bipartite", "projective-incidence", "random-bipartite-regular")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    k: int = 3
    q: int | None = None       # projective order (prime)
    n: int | None = None       # vertex count for the random family
    seed: int | None = None
    girth_filter: bool = True


def _attach_matchings(g: Graph, k: int) -> InstanceSpec:
    m1 = maximum_matching(g)
    if 2 * len(m1) != g.n:
        raise PreconditionError("graph has no perfect matching")
    m2 = maximum_matching(g.without_edges(m1))
    if 2 * len(m2) != g.n:
        raise PreconditionError("graph has no second disjoint perfect matching")
    return InstanceSpec(k=k, graph=g, m1=m1, m2=m2)


def complete_bipartite_instance(k: int) -> InstanceSpec:
    """K_{2k,2k}; its girth is 4, so only k = 3 is in class."""
    if k != 3:
        raise PreconditionError("K_{2k,2k} has girth 4, which only supports k = 3")
    s = 2 * k
    edges = [(u, s + v) for u in range(s) for v in range(s)]
    return _attach_matchings(Graph.from_edges(2 * s, edges), k)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def projective_incidence_instance(q: int) -> InstanceSpec:
    """Point-line incidence graph of the projective plane of prime order q:
    (q+1)-regular, girth 6, so k = (q+1)/2."""
    if not _is_prime(q) or q % 2 == 0:
        raise PreconditionError("projective order must be an odd prime")
    if q > 7:
        raise PreconditionError("orders above 7 are outside the supported desk scale")
    k = (q + 1) // 2

    points: list[tuple[int, int, int]] = [(1, a, b) for a in range(q) for b in range(q)]
    points += [(0, 1, c) for c in range(q)]
    points.append((0, 0, 1))
    index = {pt: i for i, pt in enumerate(points)}
    npts = len(points)

    edges: list[Edge] = []
    for li, line in enumerate(points):  # self-dual: lines reuse the point coordinates
        for pt in points:
            if sum(a * b for a, b in zip(line, pt)) % q == 0:
                edges.append((index[pt], npts + li))
    return _attach_matchings(Graph.from_edges(2 * npts, edges), k)


def _random_disjoint_matching(
    half: int, used: set[Edge], rng: random.Random
) -> frozenset[Edge] | None:
    """Random perfect matching between {0..half-1} and {half..2half-1}
    avoiding `used` edges, via augmenting paths in randomized order. The
    complement of a union of perfect matchings is regular bipartite, so one
    always exists; the randomized order only picks which."""
    order = list(range(half))
    rng.shuffle(order)
    allowed = []
    for u in range(half):
        nbrs = [half + v for v in range(half) if norm_edge(u, half + v) not in used]
        rng.shuffle(nbrs)
        allowed.append(nbrs)
    mate: dict[int, int] = {}

    def augment(u: int, visited: set[int]) -> bool:
        for w in allowed[u]:
            if w in visited:
                continue
            visited.add(w)
            if w not in mate or augment(mate[w], visited):
                mate[w] = u
                return True
        return False

    for u in order:
        if not augment(u, set()):
            return None
    return frozenset(norm_edge(u, w) for w, u in mate.items())


def random_bipartite_regular_instance(
    n: int, k: int, seed: int, girth_filter: bool = True, max_attempts: int = 200
) -> InstanceSpec:
    """Superpose 2k random pairwise-disjoint perfect matchings between two
    sides of n/2 vertices (each drawn from the complement of the previous
    ones); reject girth failures. The first two matchings are the
    instance's disjoint perfect matchings."""
    if n % 2 or n < 4 * k:
        raise PreconditionError(f"need even n >= {4 * k}")
    half = n // 2
    rng = random.Random(seed)
    for _ in range(max_attempts):
        edges: set[Edge] = set()
        matchings: list[frozenset[Edge]] = []
        for _ in range(2 * k):
            m = _random_disjoint_matching(half, edges, rng)
            if m is None:
                break
            edges |= m
            matchings.append(m)
        if len(matchings) < 2 * k:
            continue
        g = Graph.from_edges(n, edges)
        if girth_filter and compute_girth(g) < 2 * k - 2:
            continue
        spec = InstanceSpec(k=k, graph=g, m1=matchings[0], m2=matchings[1])
        if validate_instance(spec).ok:
            return spec
    raise RetryExhausted(f"no valid instance after {max_attempts} attempts (seed {seed})")


def generate(spec: GeneratorSpec) -> InstanceSpec:
    if spec.family not in _FAMILIES:
        raise PreconditionError(f"unknown family {spec.family!r}; choose from {_FAMILIES}")
    if spec.family == "complete-bipartite":
        inst = complete_bipartite_instance(spec.k)
    elif spec.family == "projective-incidence":
        if spec.q is None:
            raise PreconditionError("projective family needs q")
        inst = projective_incidence_instance(spec.q)
    else:
        if spec.n is None:
            raise PreconditionError("random family needs n")
        inst = random_bipartite_regular_instance(
            spec.n, spec.k, spec.seed or 0, girth_filter=spec.girth_filter
        )
    report = validate_instance(inst)
    if not report.ok:
        raise ValidationError("generated instance failed validation: " + "; ".join(report.failures()))
    return inst
