"""End-to-end pipeline: validate, obtain matchings, decompose the residual,
assemble trails, balance, eliminate cycles, verify."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .balance import decompose_balanced
from .cycle_elim import eliminate_cycles
from .errors import PreconditionError, ValidationError
from .graph import Decomposition, InstanceSpec, validate_instance
from .matching import find_two_disjoint_perfect_matchings
from .odd_decomp import OddDecomposition, decompose_odd_regular
from .verify import Level, VerificationReport, verify_decomposition


@dataclass
class PipelineResult:
    instance: InstanceSpec
    decomposition: Decomposition
    balanced_stage: Decomposition
    odd: OddDecomposition
    verification: VerificationReport
    stats: dict = field(default_factory=dict)


def decompose_instance(
    spec: InstanceSpec,
    node_budget: int | None = None,
    trace: list | None = None,
    skip_validation: bool = False,
) -> PipelineResult:
    stats: dict = {}
    t0 = time.perf_counter()

    if not skip_validation:
        report = validate_instance(spec)
        if not report.ok:
            raise ValidationError("instance outside the graph class: " + "; ".join(report.failures()))
    stats["validate_s"] = time.perf_counter() - t0

    t = time.perf_counter()
    if spec.m1 is not None and spec.m2 is not None:
        m1 = spec.m1
    else:
        pair = find_two_disjoint_perfect_matchings(spec.graph)
        if pair is None:
            raise PreconditionError("graph has no pair of disjoint perfect matchings")
        m1 = pair[0]
        spec = InstanceSpec(spec.k, spec.graph, pair[0], pair[1])
    stats["matchings_s"] = time.perf_counter() - t

    t = time.perf_counter()
    gprime = spec.graph.without_edges(m1)
    odd, search = decompose_odd_regular(gprime, spec.k, node_budget=node_budget)
    stats["odd_decomp_s"] = time.perf_counter() - t
    stats["odd_nodes"] = search.nodes
    stats["odd_rainbow"] = search.used_rainbow

    t = time.perf_counter()
    balanced = decompose_balanced(spec.graph, m1, odd)
    stats["balance_s"] = time.perf_counter() - t
    stats["cycles_before_elimination"] = len(balanced.cycles)

    t = time.perf_counter()
    final = eliminate_cycles(balanced, trace=trace)
    stats["cycle_elim_s"] = time.perf_counter() - t

    t = time.perf_counter()
    verification = verify_decomposition(spec.graph, final, Level.THEOREM2)
    stats["verify_s"] = time.perf_counter() - t
    stats["total_s"] = time.perf_counter() - t0
    if not verification.ok:
        raise ValidationError("pipeline output failed verification: " + "; ".join(verification.failures()))

    return PipelineResult(
        instance=spec,
        decomposition=final,
        balanced_stage=balanced,
        odd=odd,
        verification=verification,
        stats=stats,
    )
