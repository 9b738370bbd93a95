"""Experiment runner, analytic bounds and the command line interface."""

from .bounds import BOUND_IDS, evaluate_bound
from .runner import (
    ConfigError,
    ExperimentConfig,
    ResultRow,
    load_config,
    parse_config,
    run_experiment,
    summarize,
)

__all__ = [
    "BOUND_IDS",
    "ConfigError",
    "ExperimentConfig",
    "ResultRow",
    "evaluate_bound",
    "load_config",
    "parse_config",
    "run_experiment",
    "summarize",
]
