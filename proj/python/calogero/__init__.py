"""Hierarchical 3^k-body Calogero model: spectrum, eigenfunctions and checks."""

from ._core import (
    ConfigError,
    DomainError,
    Error,
    Model,
    SingularConfiguration,
    ValidationError,
    energy,
    equivalence,
    hyperspherical,
    jacobi_round_trip,
    normalize_state,
    orthogonality,
    potential,
    psi,
    residual,
    sample_configs,
    spectrum,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "Model",
    "SingularConfiguration",
    "ValidationError",
    "energy",
    "equivalence",
    "hyperspherical",
    "jacobi_round_trip",
    "normalize_state",
    "orthogonality",
    "potential",
    "psi",
    "residual",
    "sample_configs",
    "spectrum",
]
