"""diagramkit: exact calculus of weighted exceptional-curve graphs."""

from .dcc import (
    CoefficientSet,
    Family,
    InfiniteTailError,
    below_threshold,
    contains,
    hurwitz_quotient_transform,
    is_dcc_witnessed,
    longest_strictly_decreasing_chain,
    min_positive,
)
from .diagrams import (
    BoundReport,
    E9Report,
    EnumerationResult,
    GraphClass,
    GraphKind,
    HeightAuditReport,
    HorizonReport,
    PreconditionError,
    ShapeReport,
    check_minimal_elliptic_shape,
    classify_graph,
    e9_lemma_check,
    e9_tower,
    e9_tower_report,
    edge_blowup_height_audit,
    enumerate_minimal_elliptic_star,
    lanner_blowup_search,
    lanner_diameter_candidate,
    nikulin_bound,
    pair_bound_audit,
    pair_bound_constants,
    vertex_blowup_horizon,
    weight_cap,
)
from .discrepancy import (
    BudgetExceededError,
    Classification,
    DiscrepancyVector,
    LogTerminalReport,
    SingularityClass,
    classify_singularity,
    is_log_terminal_graph,
    log_discrepancies,
)
from .exact import (
    DegenerateInputError,
    FeasibilityResult,
    Rational,
    Signature,
    SingularSystemError,
    SymMatrix,
    feasible_box_lp,
    format_rational,
    parse_rational,
    signature,
    solve_linear,
)
from .graphio import GraphParseError, graph_to_json, parse_graph, serialize_graph
from .graphs import (
    BlowdownStep,
    Vertex,
    WeightedGraph,
    blowdown,
    blowup_edge,
    blowup_vertex,
    canonical_class,
    canonical_form,
    canonical_order,
    canonical_relabel,
    chain,
    connected_vertex_subsets,
    contractible,
    cycle,
    diameter,
    distance_pairs,
    intersection_matrix,
    is_minimal,
    isomorphic,
    reduce_to_minimal,
    star,
)
from .star import StarCertificate, check_star, star_closure_blowdown, star_closure_subgraph

__version__ = "0.1.0"
