"""Numerical suprema over the unit disk."""

from disknorm.norms.engine import KINDS, NormEstimate, SupConfig, pointwise, weighted_sup
from disknorm.norms.quantities import (
    bloch_seminorm_analytic,
    bloch_seminorm_derivative,
    harmonic_bloch_seminorms,
    hyperbolic_sup,
    logharmonic_bloch_norm,
    pre_schwarzian_norm,
    psi_pre_schwarzian_norm,
    schwarzian_norm,
)

__all__ = [
    "KINDS",
    "NormEstimate",
    "SupConfig",
    "bloch_seminorm_analytic",
    "bloch_seminorm_derivative",
    "harmonic_bloch_seminorms",
    "hyperbolic_sup",
    "logharmonic_bloch_norm",
    "pointwise",
    "pre_schwarzian_norm",
    "psi_pre_schwarzian_norm",
    "schwarzian_norm",
    "weighted_sup",
]
