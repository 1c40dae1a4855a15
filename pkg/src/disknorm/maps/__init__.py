"""Analytic, harmonic and logharmonic disk maps and their derived objects."""

from disknorm.maps.branch import continued_log, evaluate_analytic
from disknorm.maps.catalog import CatalogEntry, Expected, catalog, standard_entries
from disknorm.maps.mappings import (
    HarmonicMap,
    LogharmonicMap,
    coanalytic_from_dilatation,
    dilatation,
    eval_pre_schwarzian_harmonic,
    eval_pre_schwarzian_logharmonic,
    eval_schwarzian_harmonic,
    harmonic_map,
    hyperbolic_derivative,
    jacobian_logharmonic,
    log_of,
    logharmonic_map,
    map_from_json,
    pde_residual,
    power_construct,
    pre_schwarzian_analytic,
    schwarzian_analytic,
)
from disknorm.maps.transforms import affine_transform_logF, koebe_transform_logF

__all__ = [
    "CatalogEntry",
    "Expected",
    "HarmonicMap",
    "LogharmonicMap",
    "affine_transform_logF",
    "catalog",
    "coanalytic_from_dilatation",
    "continued_log",
    "dilatation",
    "eval_pre_schwarzian_harmonic",
    "eval_pre_schwarzian_logharmonic",
    "eval_schwarzian_harmonic",
    "evaluate_analytic",
    "harmonic_map",
    "hyperbolic_derivative",
    "jacobian_logharmonic",
    "koebe_transform_logF",
    "log_of",
    "logharmonic_map",
    "map_from_json",
    "pde_residual",
    "power_construct",
    "pre_schwarzian_analytic",
    "schwarzian_analytic",
    "standard_entries",
]
