"""Acceptance suite: one test per criterion, exact combinatorial checks,
one PASS line printed per criterion."""

from __future__ import annotations

import random
import time
from collections import Counter

from regpath.balance import _quasi_balanced, pair_decompose, quasi_balance_witness
from regpath.cycle_elim import (
    CyclePathMode,
    chord_bounds,
    decompose_cycle_path,
    decompose_two_cycles,
)
from regpath.errors import ExceptionalError, SearchExhausted
from regpath.generators import (
    projective_incidence_instance,
    random_bipartite_regular_instance,
)
from regpath.pipeline import decompose_instance
from regpath.trails import detect_exceptional, exceptional_context_check, trail_exceptional_indices
from regpath.verify import Level, brute_force_two_path_split, verify_decomposition

from helpers import (
    all_pair_extensions,
    exceptional_extension,
    pair_key,
    sample_chordal_paths,
    sample_cycle_pairs,
    sample_interior_paths,
)


def _check_theorem2(result, expect_paths: int, k: int) -> None:
    d = result.decomposition
    assert len(d.elements) == expect_paths
    lengths = [p.length for p in d.paths]
    assert len(lengths) == expect_paths  # paths only
    assert all(l in (2 * k - 1, 2 * k, 2 * k + 1) for l in lengths)
    counts = Counter(lengths)
    assert counts[2 * k - 1] == counts[2 * k + 1]
    report = verify_decomposition(result.instance.graph, d, Level.THEOREM2)
    assert report.ok, report.failures()


def test_criterion_1_k66_end_to_end(k66_result):
    t0 = time.perf_counter()
    result = decompose_instance(k66_result.instance)
    elapsed = time.perf_counter() - t0
    _check_theorem2(result, 6, 3)
    assert elapsed < 10.0
    print(f"\nPASS criterion 1: K_{{6,6}} -> 6 paths, counts balanced, verified in {elapsed:.2f}s")


def test_criterion_2_pg25(pg25_result):
    t0 = time.perf_counter()
    result = decompose_instance(pg25_result.instance)
    elapsed = time.perf_counter() - t0
    assert result.instance.graph.n == 62 and result.instance.graph.m == 186
    _check_theorem2(result, 31, 3)
    assert elapsed < 600.0
    print(f"\nPASS criterion 2: PG(2,5) incidence -> 31 paths, verified in {elapsed:.2f}s")


def test_criterion_3_pg27_k4():
    inst = projective_incidence_instance(7)
    assert inst.graph.n == 114 and inst.k == 4
    t0 = time.perf_counter()
    try:
        result = decompose_instance(inst)
    except SearchExhausted as exc:
        # Permitted downgrade: budget exhaustion is reported, never a wrong answer.
        print(f"\nPASS criterion 3 (downgraded): search budget exhausted, stats {exc.stats}")
        return
    elapsed = time.perf_counter() - t0
    _check_theorem2(result, 57, 4)
    assert elapsed < 1800.0
    print(f"\nPASS criterion 3: PG(2,7) incidence -> 57 paths (k=4), verified in {elapsed:.2f}s")


def test_criterion_4_path_count_over_random_instances(random_corpus):
    assert len(random_corpus) >= 100
    failures = 0
    for inst in random_corpus:
        assert inst.graph.n <= 40
        result = decompose_instance(inst)
        if len(result.decomposition.elements) != inst.graph.n // 2:
            failures += 1
        report = verify_decomposition(inst.graph, result.decomposition, Level.THEOREM2)
        assert report.ok, report.failures()
    assert failures == 0
    print(f"\nPASS criterion 4: {len(random_corpus)} random instances, all emitted n/2 paths")


def test_criterion_5_pair_repair_fails_iff_exceptional(corpus_trails):
    exts = [e for w in corpus_trails for e in all_pair_extensions(w)]
    exts.append(exceptional_extension())
    exts.append(exceptional_extension(with_left_flank=True))
    assert len(exts) >= 1000
    exceptional_count = 0
    for ext in exts:
        flagged = detect_exceptional(ext, 3)
        try:
            pair_decompose(ext, 3)
            failed = False
        except ExceptionalError:
            failed = True
        # SearchExhausted would propagate: a zero-violations criterion
        assert failed == flagged
        if flagged:
            exceptional_count += 1
            # every occurrence is the k=3 rigid template, never k >= 4
            assert not detect_exceptional(ext, 4)
    # exceptional windows are never consecutive along any corpus trail
    for w in corpus_trails:
        for i in trail_exceptional_indices(w, 3):
            assert exceptional_context_check(w, i, 3).ok
    print(
        f"\nPASS criterion 5: {len(exts)} extensions, repair failure == exceptional "
        f"({exceptional_count} exceptional), no consecutive exceptionals"
    )


def test_criterion_6_oracle_equivalence(corpus_trails, pg25_instance):
    # side 1: every pair extension agrees with the independent enumeration
    exts = [e for w in corpus_trails for e in all_pair_extensions(w)]
    exts.append(exceptional_extension())
    checked = 0
    for ext in exts:
        assert len(ext.edge_set) <= 18
        wit = quasi_balance_witness(ext)
        sols = brute_force_two_path_split(
            ext.edge_set,
            predicate=lambda a, b: 5 <= a.length <= 7
            and 5 <= b.length <= 7
            and _quasi_balanced((a, b), 3, wit.excused),
        )
        keys = {pair_key(a, b) for a, b in sols}
        try:
            got = pair_decompose(ext, 3)
            assert pair_key(*got) in keys
            assert sols
        except ExceptionalError:
            assert not sols
        checked += 1

    # side 2: cycle+path unions in interior mode
    rng = random.Random(23)
    unions = sample_interior_paths(pg25_instance.graph, 3, rng, 60)
    assert len(unions) >= 40
    for c, p in unions:
        assert len(c.edge_set | p.edge_set) <= 18
        a, b = decompose_cycle_path(c, p, CyclePathMode.INTERIOR, 3)
        ends = {p.first, p.last}
        sols = brute_force_two_path_split(
            c.edge_set | p.edge_set,
            predicate=lambda x, y: sorted((x.length, y.length)) == sorted((6, p.length))
            and len(ends & {x.first, x.last}) == 1
            and len(ends & {y.first, y.last}) == 1,
        )
        keys = {pair_key(x, y) for x, y in sols}
        assert sols and pair_key(a, b) in keys
    print(
        f"\nPASS criterion 6: {checked} extensions + {len(unions)} cycle-path unions "
        "agree with the brute-force solution sets"
    )


def test_criterion_7_chord_and_intersection_bounds(pg25_instance, k66_instance):
    rng = random.Random(41)
    pg27 = projective_incidence_instance(7)
    total = 0
    r3_seen = 0
    for inst, want_chordal, want_interior in (
        (pg25_instance, 350, 200),
        (k66_instance, 250, 150),
        (pg27, 100, 60),
    ):
        g, k = inst.graph, inst.k
        for c, p in sample_chordal_paths(g, k, rng, want_chordal):
            rep = chord_bounds(c, p, k)
            assert rep.ok, (c.vertices, p.vertices)
            total += 1
        for c, p in sample_interior_paths(g, k, rng, want_interior):
            r = len(p.vertex_set & c.vertex_set) - 1
            assert r <= 3
            if r == 3:
                assert k <= 4
                r3_seen += 1
            total += 1
    assert total >= 1000
    print(
        f"\nPASS criterion 7: {total} sampled unions satisfy every length/intersection "
        f"bound (r = 3 seen {r3_seen} times, k <= 4 each)"
    )


def test_criterion_8_two_cycle_merges(pg25_instance, k66_instance):
    rng = random.Random(57)
    pg27 = projective_incidence_instance(7)
    total = 0
    for inst, want in ((pg25_instance, 250), (k66_instance, 200), (pg27, 60)):
        g, k = inst.graph, inst.k
        for c1, c2 in sample_cycle_pairs(g, k, rng, want):
            a, b = decompose_two_cycles(c1, c2, k)
            assert a.length == b.length == 2 * k
            got = Counter(e for q in (a, b) for e in q.edge_set)
            assert set(got) == set(c1.edge_set | c2.edge_set)
            assert all(v == 1 for v in got.values())
            total += 1
    assert total >= 500
    print(f"\nPASS criterion 8: {total} intersecting 2k-cycle pairs merged into 2k/2k paths")
