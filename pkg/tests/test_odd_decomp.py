from __future__ import annotations

import pytest

from regpath.errors import PreconditionError, SearchExhausted
from regpath.matching import maximum_matching
from regpath.odd_decomp import (
    SearchStats,
    _backtrack_paths,
    decompose_odd_regular,
    validate_odd_decomposition,
)
from regpath.verify import PathConstraints, brute_force_path_decomposition

from helpers import complete_bipartite, petersen


def test_k55_decomposes_into_five_length5_paths():
    g = complete_bipartite(5, 5)
    dec, stats = decompose_odd_regular(g, 3)
    validate_odd_decomposition(g, dec)
    assert len(dec.paths) == 5
    assert all(p.length == 5 for p in dec.paths)
    # existence confirmed independently of the search route
    oracle = brute_force_path_decomposition(
        g, 3, PathConstraints(num_paths=5, allowed_lengths=frozenset({5}))
    )
    assert oracle is not None


def test_k66_minus_matching():
    g = complete_bipartite(6, 6)
    gprime = g.without_edges(maximum_matching(g))
    dec, _ = decompose_odd_regular(gprime, 3)
    validate_odd_decomposition(gprime, dec)
    assert len(dec.paths) == 6
    assert sum(p.length for p in dec.paths) == 30


def test_endpoint_index_is_a_bijection():
    g = complete_bipartite(5, 5)
    dec, _ = decompose_odd_regular(g, 3)
    assert set(dec.endpoint_index) == set(range(g.n))
    ends = [v for p in dec.paths for v in (p.first, p.last)]
    assert sorted(ends) == list(range(g.n))


def test_precondition_gate_fires_before_search():
    g = complete_bipartite(5, 4)  # not regular
    with pytest.raises(PreconditionError):
        decompose_odd_regular(g, 3)


def test_nonbipartite_backtracking_route():
    # cubic, girth 5, has a perfect matching: length-3 paths for k=2
    g = petersen()
    dec, stats = decompose_odd_regular(g, 2)
    validate_odd_decomposition(g, dec)
    assert len(dec.paths) == 5 and all(p.length == 3 for p in dec.paths)
    assert not stats.used_rainbow


def test_backtracking_route_agrees_on_bipartite_input():
    g = complete_bipartite(5, 5)
    paths = _backtrack_paths(g, 5, SearchStats())
    assert len(paths) == 5
    covered = set()
    for seq in paths:
        for i in range(len(seq) - 1):
            e = tuple(sorted((seq[i], seq[i + 1])))
            assert e not in covered
            covered.add(e)
    assert len(covered) == g.m


def test_node_budget_aborts_with_stats():
    g = complete_bipartite(7, 7).without_edges(maximum_matching(complete_bipartite(7, 7)))
    # k=4 residual wants length-7 paths; a 1-node budget cannot succeed
    with pytest.raises(SearchExhausted) as exc:
        _backtrack_paths(g, 7, SearchStats(budget=1))
    assert exc.value.stats["nodes"] > 0


def test_decompose_odd_regular_deterministic():
    g = complete_bipartite(5, 5)
    a, _ = decompose_odd_regular(g, 3)
    b, _ = decompose_odd_regular(g, 3)
    assert [p.vertices for p in a.paths] == [p.vertices for p in b.paths]
    pet = petersen()
    a2, _ = decompose_odd_regular(pet, 2)
    b2, _ = decompose_odd_regular(pet, 2)
    assert [p.vertices for p in a2.paths] == [p.vertices for p in b2.paths]


def test_node_budget_read_from_environment(monkeypatch):
    from regpath.odd_decomp import node_budget_from_env

    monkeypatch.setenv("REGPATH_SEARCH_BUDGET", "12345")
    assert node_budget_from_env() == 12345
    monkeypatch.delenv("REGPATH_SEARCH_BUDGET")
    assert node_budget_from_env() == 10**8
