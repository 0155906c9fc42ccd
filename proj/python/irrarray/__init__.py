"""Simulation and optimization toolkit for irregular phased arrays."""

from irrarray._core import (
    Architecture,
    ArrayConfig,
    ConfigKind,
    DegenerateChannelError,
    DegenerateMaskError,
    EvalSummary,
    GaResult,
    Scenario,
    __version__,
    connection_matrix,
    count_domino,
    count_thinned,
    enumerate_configs,
    evaluate_config,
    fill_factor,
    ga_search,
    make_fpra,
    objective,
    pareto_front,
    sample_thinned,
    steering_vector,
)

__all__ = [
    "Architecture",
    "ArrayConfig",
    "ConfigKind",
    "DegenerateChannelError",
    "DegenerateMaskError",
    "EvalSummary",
    "GaResult",
    "Scenario",
    "__version__",
    "connection_matrix",
    "count_domino",
    "count_thinned",
    "enumerate_configs",
    "evaluate_config",
    "fill_factor",
    "ga_search",
    "make_fpra",
    "objective",
    "pareto_front",
    "sample_thinned",
    "steering_vector",
]
