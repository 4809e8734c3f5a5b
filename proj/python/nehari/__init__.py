"""Python bindings for the nehari solver."""

from ._core import (
    ConfigError,
    Problem,
    SolverStall,
    ValidationError,
    __version__,
    decay_fit,
    default_config,
    eigenbasis,
    energy,
    fibering_project,
    fountain,
    grad_l2,
    ground_state,
    multiple_solutions,
    nehari_xi,
    norm,
    orbit_distance,
    run,
    validate,
)

__all__ = [
    "ConfigError",
    "Problem",
    "SolverStall",
    "ValidationError",
    "__version__",
    "decay_fit",
    "default_config",
    "eigenbasis",
    "energy",
    "fibering_project",
    "fountain",
    "grad_l2",
    "ground_state",
    "multiple_solutions",
    "nehari_xi",
    "norm",
    "orbit_distance",
    "run",
    "validate",
]
