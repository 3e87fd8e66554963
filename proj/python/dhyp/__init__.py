"""Confluent hypergeometric series, the Riemann function and the Cauchy problem solver."""

from ._dhyp import (
    ConfigError,
    ConvergenceError,
    DhypError,
    DomainError,
    PoleError,
    QuadratureError,
    SeriesValue,
    TargetOutsideCone,
    gauss_f,
    phi,
    psi_pq,
    riemann_function,
    run_identity_suite,
    solve_grid,
    solve_V,
    to_characteristic,
    xi2,
    xi_pq,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DhypError",
    "DomainError",
    "PoleError",
    "QuadratureError",
    "SeriesValue",
    "TargetOutsideCone",
    "gauss_f",
    "phi",
    "psi_pq",
    "riemann_function",
    "run_identity_suite",
    "solve_grid",
    "solve_V",
    "to_characteristic",
    "xi2",
    "xi_pq",
]
