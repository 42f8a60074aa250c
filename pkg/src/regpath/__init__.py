"""Constructive near-uniform path decompositions of 2k-regular graphs that
carry two disjoint perfect matchings: every such graph on n vertices splits
into n/2 paths with lengths in {2k-1, 2k, 2k+1} and equally many shortest
and longest paths."""

from .balance import (
    balanced_decompose_trail,
    decompose_balanced,
    nice_extension_decompose,
    pair_decompose,
    quasi_balance_witness,
)
from .cycle_elim import (
    BoundsReport,
    CyclePathMode,
    chord_bounds,
    cycle_witness_paths,
    decompose_cycle_path,
    decompose_two_cycles,
    eliminate_cycles,
)
from .errors import (
    ContractViolation,
    ExceptionalError,
    GraphFormatError,
    PreconditionError,
    RegpathError,
    RetryExhausted,
    SearchExhausted,
    ValidationError,
)
from .generators import GeneratorSpec, generate
from .graph import (
    CycleWalk,
    Decomposition,
    Graph,
    InstanceSpec,
    PathWalk,
    Trail,
    UNBOUNDED,
    ValidationReport,
    canonical_encode,
    compute_girth,
    validate_instance,
)
from .matching import (
    bipartite_one_factorization,
    enumerate_perfect_matchings,
    find_two_disjoint_perfect_matchings,
    is_perfect_matching,
    maximum_matching,
)
from .odd_decomp import OddDecomposition, decompose_odd_regular, validate_odd_decomposition
from .pipeline import PipelineResult, decompose_instance
from .trails import (
    AlternatingClosedTrail,
    Extension,
    LinkClass,
    TrappedReport,
    build_alternating_closed_trails,
    classify_link,
    detect_exceptional,
    exceptional_context_check,
    format_trail,
    maximal_trapped_sequences,
)
from .verify import (
    Level,
    PathConstraints,
    VerificationReport,
    brute_force_path_decomposition,
    brute_force_two_path_split,
    verify_decomposition,
)

__version__ = "0.1.0"
