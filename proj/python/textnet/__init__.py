"""Co-occurrence networks from text and network-based early-warning evaluation."""

from ._textnet import (
    Error,
    InputError,
    Network,
    NumericalError,
    PatternMatcher,
    auc,
    avg_binary_distance,
    betweenness,
    build_networks,
    centrality_panel,
    closeness,
    evaluate,
    fit_logit,
    fit_ols,
    generate_synthetic,
    information_centrality,
    optimize_threshold,
    shortest_paths,
    smooth,
    strength,
    variance_across_nodes,
    variance_over_time,
)

__all__ = [
    "Error",
    "InputError",
    "Network",
    "NumericalError",
    "PatternMatcher",
    "auc",
    "avg_binary_distance",
    "betweenness",
    "build_networks",
    "centrality_panel",
    "closeness",
    "evaluate",
    "fit_logit",
    "fit_ols",
    "generate_synthetic",
    "information_centrality",
    "optimize_threshold",
    "shortest_paths",
    "smooth",
    "strength",
    "variance_across_nodes",
    "variance_over_time",
]
