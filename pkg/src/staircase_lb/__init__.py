"""Staircase hard instances for local search on graphs, with exact
evaluation and verification of their quantum adversary lower bound."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    DuplicateEdgeError,
    EmptyRelationError,
    GraphValidationError,
    InfeasibleParametersError,
    SelfLoopError,
    StaircaseError,
    ValidationError,
    VerificationError,
    VertexLabelError,
)
from .graph import (
    DistanceMatrix,
    Graph,
    GraphMetrics,
    bound_calculator,
    build_graph,
    distances,
    expansion_exact,
    generate,
    metrics,
)
from .routing import (
    CongestionReport,
    PathSystem,
    anneal_congestion,
    check_congestion_inequality,
    min_congestion_bruteforce,
    num_paths_through,
    shortest_path_system,
    vertex_congestion,
)
from .staircase import (
    DecoratedValue,
    HardInstance,
    MilestoneSequence,
    Staircase,
    build_staircase,
    eval_f,
    eval_g,
    is_good,
    local_minima,
    make_instance,
    multiplicity,
    shared_prefix,
    tail,
)
from .solvers import QueryOracle, SolveResult, decision_from_search, random_descent, steepest_descent
