"""Fricke/Charlap-Coley-Robbins modular polynomials (C++ core bindings)."""

from ._fricke import (
    compute_polynomial,
    eisenstein_series,
    eval_at_rho,
    isogenous,
    psi,
    relative_heights,
    to_ab,
)

__all__ = [
    "compute_polynomial",
    "eisenstein_series",
    "eval_at_rho",
    "isogenous",
    "psi",
    "relative_heights",
    "to_ab",
]
