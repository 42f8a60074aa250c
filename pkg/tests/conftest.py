from __future__ import annotations

import pytest

from regpath.generators import (
    complete_bipartite_instance,
    projective_incidence_instance,
    random_bipartite_regular_instance,
)
from regpath.odd_decomp import decompose_odd_regular
from regpath.pipeline import decompose_instance
from regpath.trails import build_alternating_closed_trails


@pytest.fixture(scope="session")
def k66_instance():
    return complete_bipartite_instance(3)


@pytest.fixture(scope="session")
def k66_result(k66_instance):
    return decompose_instance(k66_instance)


@pytest.fixture(scope="session")
def pg25_instance():
    return projective_incidence_instance(5)


@pytest.fixture(scope="session")
def pg25_result(pg25_instance):
    return decompose_instance(pg25_instance)


@pytest.fixture(scope="session")
def random_corpus():
    """100 random k=3 instances used by the property suites."""
    out = []
    for seed in range(25):
        for n in (12, 16, 20, 28):
            out.append(random_bipartite_regular_instance(n, 3, seed * 31 + n))
    return out


@pytest.fixture(scope="session")
def corpus_trails(random_corpus, k66_instance, pg25_instance):
    """All alternating closed trails arising from the corpus, via both the
    factorization-walk route and the backtracking route (the two produce
    structurally different decompositions)."""
    from regpath.odd_decomp import SearchStats, _backtrack_paths, _finish

    trails = []
    for inst in random_corpus + [k66_instance, pg25_instance]:
        gprime = inst.graph.without_edges(inst.m1)
        dec, _ = decompose_odd_regular(gprime, inst.k)
        trails.extend(build_alternating_closed_trails(inst.m1, dec))
    for inst in random_corpus:
        if inst.graph.n <= 20:
            gprime = inst.graph.without_edges(inst.m1)
            paths = _backtrack_paths(gprime, 2 * inst.k - 1, SearchStats())
            dec = _finish(inst.k, paths)
            trails.extend(build_alternating_closed_trails(inst.m1, dec))
    return trails
