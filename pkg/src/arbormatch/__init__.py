"""Streaming matching-size estimation for bounded-arboricity graphs.

Exact offline oracles (matching, degeneracy, degree-threshold
characterization, surviving-edge counts), deterministic stream generators,
one-pass estimators with space instrumentation, and an experiment harness.
"""

from .errors import (
    BudgetExceeded,
    ConfigError,
    DuplicateEdge,
    GraphError,
    HasDeletions,
    ParseError,
    SelfLoop,
    StreamInvariantError,
    TooLarge,
    VertexOutOfRange,
)
from .estimators import (
    Alg1Params,
    Alg1State,
    AlphaGoodTest,
    Estimate,
    LevelState,
    alg1_estimate,
    alg2_estimate,
    alg4_estimate_e_alpha,
    alpha_good_test_feed,
    dynamic_estimate,
    estimate_matching_logspace,
)
from .graphs import (
    CharacterizationReport,
    Graph,
    brute_force_matching_size,
    build_graph,
    characterize,
    degeneracy,
    forest_matching_size,
    greedy_maximal_matching,
    later_degree_profile,
    maximum_matching_size,
    offline_alpha_good_set,
    parse_graph,
    serialize_graph,
)
from .harness import (
    ExperimentConfig,
    LemmaCheck,
    LemmaReport,
    TrialRecord,
    check_lemmas,
    emit_csv,
    parse_config,
    run_experiment,
    summarize_ratios,
)
from .streams import (
    DELETE,
    INSERT,
    EdgeStream,
    OrderingPolicy,
    StreamEvent,
    delete_event,
    generate_dynamic_stream,
    generate_random_tree,
    generate_star_forest,
    generate_union_of_forests,
    insert_event,
    order_stream,
    parse_stream,
    pruefer_to_edges,
    serialize_stream,
)

__version__ = "0.1.0"

__all__ = [
    "Alg1Params",
    "Alg1State",
    "AlphaGoodTest",
    "BudgetExceeded",
    "CharacterizationReport",
    "ConfigError",
    "DELETE",
    "DuplicateEdge",
    "EdgeStream",
    "Estimate",
    "ExperimentConfig",
    "Graph",
    "GraphError",
    "HasDeletions",
    "INSERT",
    "LemmaCheck",
    "LemmaReport",
    "LevelState",
    "OrderingPolicy",
    "ParseError",
    "SelfLoop",
    "StreamEvent",
    "StreamInvariantError",
    "TooLarge",
    "TrialRecord",
    "VertexOutOfRange",
    "alg1_estimate",
    "alg2_estimate",
    "alg4_estimate_e_alpha",
    "alpha_good_test_feed",
    "brute_force_matching_size",
    "build_graph",
    "characterize",
    "check_lemmas",
    "degeneracy",
    "delete_event",
    "dynamic_estimate",
    "emit_csv",
    "estimate_matching_logspace",
    "forest_matching_size",
    "generate_dynamic_stream",
    "generate_random_tree",
    "generate_star_forest",
    "generate_union_of_forests",
    "greedy_maximal_matching",
    "insert_event",
    "later_degree_profile",
    "maximum_matching_size",
    "offline_alpha_good_set",
    "order_stream",
    "parse_config",
    "parse_graph",
    "parse_stream",
    "pruefer_to_edges",
    "run_experiment",
    "serialize_graph",
    "serialize_stream",
    "summarize_ratios",
]
