"""The named verification suites run by ``disknorm verify``."""

from __future__ import annotations

import numpy as np

from disknorm.maps.catalog import catalog
from disknorm.maps.mappings import logharmonic_map
from disknorm.theorems import checks as C
from disknorm.theorems.properties import DEFAULT_SEED, run_properties

SUITE_NAMES = ("paper", "properties", "all")

# twenty parameters for the closed-form N_t against brute force
N_T_PARAMS = tuple(float(t) for t in np.round(np.linspace(0.05, 0.99, 20), 4))


def run_closed_form(cfg=None, tol=C.DEFAULT_TOL):
    """Every closed-form value and inequality, on the catalog maps."""
    ex1, ex2 = catalog("thm31_ex1"), catalog("thm31_ex2")
    family = {t: catalog(f"thm36_family({t})") for t in (0.5, 0.9, 0.999)}
    analytic = logharmonic_map("exp(z)", g="1", label="exp(z), g = 1")
    convex = logharmonic_map("1-log(1-z)", g="1", label="1 - log(1-z), g = 1")
    small = logharmonic_map("exp(0.2*z)", g="1", label="exp(0.2 z), g = 1")
    reports = [
        C.check_gap_thm31(ex1, cfg, tol),
        C.check_gap_thm31(ex2, cfg, tol),
        C.check_gap_thm31(analytic, cfg, tol),
        C.check_corollary32(ex2, "univalent", cfg, tol),
        C.check_corollary32(convex, "convex", cfg, tol),
        C.check_corollary32(family[0.9], "univalent", cfg, tol),
        C.check_becker_thm33(small, cfg, tol, expect_hypothesis=True),
        C.check_becker_thm33(ex1, cfg, tol, expect_hypothesis=False),
        C.check_becker_thm33(catalog("exp_h"), cfg, tol, expect_hypothesis=True),
        C.check_bloch_equiv_thm34(ex1, cfg, tol),
        C.check_bloch_equiv_thm34(family[0.5], cfg, tol),
        C.check_bloch_equiv_thm34(analytic, cfg, tol),
    ]
    reports += [C.check_gap_thm35(e, cfg, tol) for e in family.values()]
    reports += [
        C.check_gap_thm35(analytic, cfg, tol),
        C.check_n_t_formula(N_T_PARAMS),
        C.check_coefficient_lemma("-log(1-z)", 20, cfg),
        C.check_coefficient_lemma("z", 1, cfg),
        C.check_coefficient_lemma("log((1+z)/(1-z)^3)", 20, cfg),
    ]
    reports += [C.check_growth_thm38(1.0, 0.5, r, cfg, tol) for r in (0.1, 0.5, 0.9)]
    reports += [
        C.check_uniform_univalence_thm36(ex1, cfg, tol),
        C.check_uniform_univalence_thm36(catalog("identity"), cfg, tol),
        C.check_uniform_univalence_thm36(family[0.5], cfg, tol),
        C.check_schwarzian_regressions(cfg, tol),
    ]
    return reports


def run_suite(name, cfg=None, tol=C.DEFAULT_TOL, seed=DEFAULT_SEED):
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    reports = []
    if name in ("paper", "all"):
        reports += run_closed_form(cfg, tol)
    if name in ("properties", "all"):
        reports += run_properties(seed, cfg)
    return reports
