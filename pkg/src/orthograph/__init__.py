"""Strong Birkhoff-James orthogonality in direct sums of matrix algebras.

The package decides plain, strong and mutual strong Birkhoff-James
orthogonality with re-verifiable certificates, characterizes isolated
vertices of the associated orthogonality graph constructively, builds
explicit short orthogonality paths (length at most four, three for large
blocks), and analyzes sampled graphs.
"""

from .algebra import (
    DEFAULT_TOLERANCES,
    AlgebraShape,
    Element,
    Projection,
    PureState,
    Tolerances,
    abs_star,
    direct_sum,
    element_from_json,
    element_to_json,
    embed,
    extract,
    is_right_invertible,
    join_projections,
    kernel_projection,
    load_element,
    minimal_projection_from_state,
    norm,
    projective_equal,
    save_element,
    split_element,
    top_minimal_projection,
)
from .errors import (
    ConfigError,
    InfeasibleRank,
    Isolated,
    NotMinimal,
    NotNormalized,
    NotPositive,
    OrthographError,
    ParseError,
    PositionOutOfRange,
    RightInvertibleEndpoint,
    ShapeMismatch,
    SmallAlgebra,
    SplitInfeasible,
    VerificationFailed,
    ZeroElement,
)
from .graph import (
    ComponentReport,
    IsolationReport,
    Orthograph,
    augment_with_paths,
    build_graph,
    classify_isolated,
    components_and_distances,
    export_graph,
    graph_from_json,
    sample_vertices,
)
from .orthogonality import (
    MinimizingScalar,
    MutualDecision,
    OrthDecision,
    WitnessVector,
    bj_orthogonal,
    brute_force_min_lambda,
    mutual_strong,
    projection_witness_check,
    state_witness_check,
    strong_bj,
    verify_certificate,
)
from .paths import (
    OrthPath,
    connect,
    connect_direct_sum,
    non_isolated_witness,
    third_projection,
    verify_path,
)
from .sampling import (
    haar_unitary,
    random_pure_state,
    random_rank_one_pair,
    sample_element,
)
from .suites import SUITES, SuiteResult, run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "AlgebraShape",
    "Element",
    "Projection",
    "PureState",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "norm",
    "abs_star",
    "is_right_invertible",
    "kernel_projection",
    "top_minimal_projection",
    "minimal_projection_from_state",
    "join_projections",
    "embed",
    "extract",
    "direct_sum",
    "split_element",
    "projective_equal",
    "element_to_json",
    "element_from_json",
    "save_element",
    "load_element",
    "OrthDecision",
    "MutualDecision",
    "WitnessVector",
    "MinimizingScalar",
    "bj_orthogonal",
    "strong_bj",
    "mutual_strong",
    "state_witness_check",
    "projection_witness_check",
    "brute_force_min_lambda",
    "verify_certificate",
    "OrthPath",
    "non_isolated_witness",
    "third_projection",
    "connect",
    "connect_direct_sum",
    "verify_path",
    "Orthograph",
    "ComponentReport",
    "IsolationReport",
    "build_graph",
    "classify_isolated",
    "components_and_distances",
    "augment_with_paths",
    "export_graph",
    "graph_from_json",
    "sample_vertices",
    "sample_element",
    "haar_unitary",
    "random_pure_state",
    "random_rank_one_pair",
    "SuiteResult",
    "SUITES",
    "run_suite",
    "run_all",
    "OrthographError",
    "ShapeMismatch",
    "ZeroElement",
    "NotPositive",
    "NotNormalized",
    "NotMinimal",
    "PositionOutOfRange",
    "InfeasibleRank",
    "SmallAlgebra",
    "Isolated",
    "RightInvertibleEndpoint",
    "VerificationFailed",
    "SplitInfeasible",
    "ParseError",
    "ConfigError",
]
