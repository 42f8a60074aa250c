from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regpath.graph import Graph
from regpath.matching import (
    bipartite_one_factorization,
    enumerate_perfect_matchings,
    find_two_disjoint_perfect_matchings,
    is_matching,
    is_perfect_matching,
    maximum_matching,
)

from helpers import complete_bipartite, cycle_graph, petersen


def brute_force_max_matching_size(g: Graph) -> int:
    best = 0

    def rec(edges, size):
        nonlocal best
        best = max(best, size)
        for i, e in enumerate(edges):
            rest = [f for f in edges[i + 1 :] if not (set(e) & set(f))]
            rec(rest, size + 1)

    rec(g.edges(), 0)
    return best


def test_maximum_matching_four_cycle():
    assert len(maximum_matching(cycle_graph(4))) == 2


def test_maximum_matching_single_edge():
    assert maximum_matching(Graph.from_edges(2, [(0, 1)])) == frozenset({(0, 1)})


def test_maximum_matching_petersen_is_perfect():
    g = petersen()
    m = maximum_matching(g)
    assert is_perfect_matching(g, m)
    # brute-force enumeration over the 15 edges confirms 5 is the maximum
    assert brute_force_max_matching_size(g) == 5


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_maximum_matching_matches_bruteforce(seed):
    rng = random.Random(seed)
    n = rng.randrange(2, 9)
    edges = [e for e in combinations(range(n), 2) if rng.random() < 0.45]
    g = Graph.from_edges(n, edges)
    m = maximum_matching(g)
    assert is_matching(m)
    assert all(g.has_edge(u, v) for u, v in m)
    assert len(m) == brute_force_max_matching_size(g)


def test_two_disjoint_pms_k66():
    g = complete_bipartite(6, 6)
    pair = find_two_disjoint_perfect_matchings(g)
    assert pair is not None
    m1, m2 = pair
    assert is_perfect_matching(g, m1) and is_perfect_matching(g, m2)
    assert not (m1 & m2)


def test_two_disjoint_pms_six_cycle():
    pair = find_two_disjoint_perfect_matchings(cycle_graph(6))
    assert pair is not None
    m1, m2 = pair
    assert not (m1 & m2) and len(m1) == len(m2) == 3


def test_petersen_has_no_disjoint_pm_pair():
    g = petersen()
    pms = list(enumerate_perfect_matchings(g))
    assert len(pms) == 6  # the known count
    assert all(a & b for a, b in combinations(pms, 2))  # every pair shares an edge
    assert find_two_disjoint_perfect_matchings(g) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_two_disjoint_pms_agree_with_enumeration(seed):
    rng = random.Random(seed)
    n = rng.choice((4, 6, 8, 10))
    edges = [e for e in combinations(range(n), 2) if rng.random() < 0.4]
    g = Graph.from_edges(n, edges)
    got = find_two_disjoint_perfect_matchings(g)
    pms = list(enumerate_perfect_matchings(g))
    truth = any(not (a & b) for a in pms for b in pms if a != b)
    if got is None:
        assert not truth
    else:
        m1, m2 = got
        assert is_perfect_matching(g, m1) and is_perfect_matching(g, m2) and not (m1 & m2)
        assert truth


def test_one_factorization_k66():
    g = complete_bipartite(6, 6)
    factors = bipartite_one_factorization(g)
    assert len(factors) == 6
    seen = set()
    for f in factors:
        assert is_perfect_matching(g, f)
        assert not (seen & f)
        seen |= f
    assert seen == g.edge_set


def test_one_factorization_rejects_nonbipartite():
    from regpath.errors import PreconditionError

    with pytest.raises(PreconditionError):
        bipartite_one_factorization(petersen())
