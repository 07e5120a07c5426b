"""Pseudospectral toolkit for the Non-KP system."""

from ._nonkp import (
    BlowUpError,
    Grid2D,
    dn_trace_error,
    fit_loglog_slope,
    hamiltonian,
    multiplier,
    omega,
    psi_T_norm,
    random_field,
    simulate,
)

__all__ = [
    "BlowUpError",
    "Grid2D",
    "dn_trace_error",
    "fit_loglog_slope",
    "hamiltonian",
    "multiplier",
    "omega",
    "psi_T_norm",
    "random_field",
    "simulate",
]
