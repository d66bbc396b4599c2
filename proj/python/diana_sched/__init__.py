"""Python access to the meta-scheduling simulator."""

from ._core import (
    Error,
    Scenario,
    ValidationError,
    compare,
    congestion_ratio,
    load_scenario,
    parse_scenario,
    priority,
    run,
    run_experiment,
    sweep,
    sweep_axes,
    threshold,
)

__all__ = [
    "Error",
    "Scenario",
    "ValidationError",
    "compare",
    "congestion_ratio",
    "load_scenario",
    "parse_scenario",
    "priority",
    "run",
    "run_experiment",
    "sweep",
    "sweep_axes",
    "threshold",
]
