"""Exact Schubert calculus with generic-rank verification over finite fields.

The package computes Littlewood-Richardson coefficients and Grassmannian
intersection numbers exactly, realizes incidence conditions as linear
constraints on maps between generic flags over a prime field (or the
rationals), builds the kernel filtration whose terminal data gives an exact
correction term for the map-space dimension, and checks parabolic
semistability of the weights attached to a solvable problem.  Sweep commands
cross-validate the combinatorial and linear-algebra routes over exhaustive
instance families.
"""

from .cohomology import (
    CohomologyClass,
    class_product,
    intersection_number,
    invariant_dim,
    nonvanishing_positions,
    problem_class,
    schubert_class,
    unit_class,
)
from .field import (
    DEFAULT_PRIME,
    Field,
    PrimeField,
    RationalField,
    field_from_name,
)
from .filtration import (
    FiltrationError,
    FiltrationStep,
    FiltrationTrace,
    TraceAudit,
    answer_q1_q2,
    run_filtration,
    run_filtration_random,
    trace_to_dict,
    verify_trace,
)
from .homspace import (
    GenericDimResult,
    GenericityError,
    HomAuditError,
    HomSystem,
    build_system,
    generic_hom_dim,
    random_flag_tuples,
    sample_generic,
    stabilized_min,
)
from .linalg import (
    Flag,
    LinAlgError,
    Matrix,
    SamplingError,
    Subspace,
    random_flag,
    random_matrix,
    random_subspace,
)
from .littlewood import lr_coefficient, lr_coefficient_pieri
from .partitions import (
    IndexSet,
    Partition,
    SchubertProblem,
    all_index_sets,
    partition_to_index,
    partitions_with,
)
from .positions import (
    dim_triple,
    falcon_compose,
    induced_flag_quot,
    induced_flag_sub,
    rappel_delta,
    schubert_position,
)
from .semistability import (
    ParabolicWeights,
    SlopeViolation,
    WitnessReport,
    check_witness,
    clincher,
    find_violations,
    is_generically_semistable,
    slope,
    total_slope,
)
from .sweeps import (
    SweepConfig,
    cmd_crosscheck,
    cmd_fulton,
    cmd_saturation,
    cmd_semistable,
    derive_seed,
    enumerate_problems,
    enumerate_triples,
    rng_for,
)

__version__ = "0.1.0"

__all__ = [
    "CohomologyClass",
    "class_product",
    "intersection_number",
    "invariant_dim",
    "nonvanishing_positions",
    "problem_class",
    "schubert_class",
    "unit_class",
    "DEFAULT_PRIME",
    "Field",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "FiltrationError",
    "FiltrationStep",
    "FiltrationTrace",
    "TraceAudit",
    "answer_q1_q2",
    "run_filtration",
    "run_filtration_random",
    "trace_to_dict",
    "verify_trace",
    "GenericDimResult",
    "GenericityError",
    "HomAuditError",
    "HomSystem",
    "build_system",
    "generic_hom_dim",
    "random_flag_tuples",
    "sample_generic",
    "stabilized_min",
    "Flag",
    "LinAlgError",
    "Matrix",
    "SamplingError",
    "Subspace",
    "random_flag",
    "random_matrix",
    "random_subspace",
    "lr_coefficient",
    "lr_coefficient_pieri",
    "IndexSet",
    "Partition",
    "SchubertProblem",
    "all_index_sets",
    "partition_to_index",
    "partitions_with",
    "dim_triple",
    "falcon_compose",
    "induced_flag_quot",
    "induced_flag_sub",
    "rappel_delta",
    "schubert_position",
    "ParabolicWeights",
    "SlopeViolation",
    "WitnessReport",
    "check_witness",
    "clincher",
    "find_violations",
    "is_generically_semistable",
    "slope",
    "total_slope",
    "SweepConfig",
    "cmd_crosscheck",
    "cmd_fulton",
    "cmd_saturation",
    "cmd_semistable",
    "derive_seed",
    "enumerate_problems",
    "enumerate_triples",
    "rng_for",
    "__version__",
]
