"""Seeded randomized property suites.

Every suite draws its instances from its own child of the run seed, so
reports are reproducible and independent of which suites are selected.
"""

from __future__ import annotations

import time

import numpy as np

from disknorm.expr import ast
from disknorm.expr.calculus import _mul, compose, differentiate, mobius
from disknorm.expr.evaluate import evaluate, evaluate_array
from disknorm.maps.catalog import standard_entries
from disknorm.maps.mappings import (
    eval_pre_schwarzian_logharmonic,
    logharmonic_map,
    pde_residual,
    pre_schwarzian_analytic,
)
from disknorm.norms import bloch_seminorm_derivative, hyperbolic_sup, logharmonic_bloch_norm
from disknorm.theorems.checks import Bound, _report, check_coefficient_lemma, check_gap_thm31, check_gap_thm35

DEFAULT_SEED = 42
INSTANCES = 200

SUITES = (
    "schwarz_pick",
    "mobius_invariance_analytic",
    "mobius_invariance_logharmonic",
    "composition_rule",
    "pde_residual",
    "coefficient_bound",
    "catalog_gaps",
)


def _rng(seed, name):
    return np.random.default_rng([seed, SUITES.index(name)])


def _disk_point(rng, rmax):
    # uniform in the disk of radius rmax
    return rmax * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())


def _disk_points(rng, n, rmax):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def random_automorphism(rng, amax=0.7):
    """e^{i gamma} (z + alpha)/(1 + conj(alpha) z) as an Expr."""
    alpha = _disk_point(rng, amax)
    rot = np.exp(2j * np.pi * rng.random())
    return _mul(ast.const(complex(rot)), mobius(complex(alpha)))


def random_blaschke(rng, max_degree=3, amax=0.9):
    d = int(rng.integers(1, max_degree + 1))
    e = ast.const(complex(np.exp(2j * np.pi * rng.random())))
    for a in _disk_points(rng, d, amax):
        e = ast.mul(e, mobius(-complex(a)))
    return e, d


# ------------------------------------------------------------------ suites


def schwarz_pick(seed=DEFAULT_SEED, n=INSTANCES, cfg=None, engine_every=4):
    """omega* <= 1 on Blaschke products at 64 random points each, equality
    for degree one, and the engine sup (every ``engine_every``-th instance,
    since a full scan costs far more than the pointwise check)."""
    t0 = time.perf_counter()
    rng = _rng(seed, "schwarz_pick")
    worst_point = worst_sup = 0.0
    worst_auto = 0.0
    for i in range(n):
        B, d = random_blaschke(rng)
        z = _disk_points(rng, 64, 0.95)
        memo = {}
        w = evaluate_array(B, z, memo)
        dw = evaluate_array(differentiate(B), z, memo)
        star = np.abs(dw) * (1 - np.abs(z) ** 2) / (1 - np.abs(w) ** 2)
        worst_point = max(worst_point, float(star.max()))
        if d == 1:
            worst_auto = max(worst_auto, float(np.abs(star - 1).max()))
        if i % engine_every == 0:
            worst_sup = max(worst_sup, hyperbolic_sup(B, cfg).value)
    computed = {"max_pointwise": worst_point, "max_engine_sup": worst_sup, "automorphism_deviation": worst_auto}
    expected = {
        "max_pointwise": Bound(1.0, "le", "Schwarz-Pick", 1e-12),
        "max_engine_sup": Bound(1.0, "le", "Schwarz-Pick", 1e-9),
        "automorphism_deviation": Bound(0.0, "le", "equality for automorphisms", 1e-12),
    }
    return _report("property.schwarz_pick", {"seed": seed, "instances": n}, computed, expected, 0.0, t0)


def _random_bloch_derivative(rng):
    """u' for a random Bloch function u."""
    kind = int(rng.integers(3))
    if kind == 0:
        a = complex(_disk_point(rng, 0.95))
        return ast.div(ast.ONE, ast.sub(ast.ONE, ast.mul(ast.const(a), ast.ZVAR)))
    if kind == 1:
        m = int(rng.integers(1, 6))
        c = complex(rng.normal() + 1j * rng.normal())
        return ast.mul(ast.const(m * c), ast.ipow(ast.ZVAR, m - 1)) if m > 1 else ast.const(c)
    # log of a rotated 1/(1 - z): boundary supremum 2 at an arbitrary angle
    e = complex(np.exp(2j * np.pi * rng.random()))
    return ast.div(ast.const(e), ast.sub(ast.ONE, ast.mul(ast.const(e), ast.ZVAR)))


def mobius_invariance_analytic(seed=DEFAULT_SEED, n=INSTANCES, cfg=None, tol=5e-4):
    t0 = time.perf_counter()
    rng = _rng(seed, "mobius_invariance_analytic")
    worst = 0.0
    for _ in range(n):
        du = _random_bloch_derivative(rng)
        phi = random_automorphism(rng)
        b0 = bloch_seminorm_derivative(du, cfg).value
        b1 = bloch_seminorm_derivative(_mul(compose(du, phi), differentiate(phi)), cfg).value
        worst = max(worst, abs(b1 - b0))
    computed = {"max_abs_difference": worst}
    expected = {"max_abs_difference": Bound(0.0, "le", "beta(u o phi) = beta(u)")}
    return _report("property.mobius_invariance_analytic", {"seed": seed, "instances": n}, computed, expected, tol, t0)


def _nonvanishing_entries():
    return [e for e in standard_entries() if e.name != "thm31_ex2"]


def mobius_invariance_logharmonic(seed=DEFAULT_SEED, n=INSTANCES, cfg=None, tol=5e-4):
    t0 = time.perf_counter()
    rng = _rng(seed, "mobius_invariance_logharmonic")
    entries = _nonvanishing_entries()
    base = {}
    worst = 0.0
    for _ in range(n):
        entry = entries[int(rng.integers(len(entries)))]
        phi = random_automorphism(rng)
        if entry.name not in base:
            base[entry.name] = logharmonic_bloch_norm(entry.map, cfg)[0].value
        b1 = logharmonic_bloch_norm(entry.map.compose(phi), cfg)[0].value
        worst = max(worst, abs(b1 - base[entry.name]))
    computed = {"max_abs_difference": worst}
    expected = {"max_abs_difference": Bound(0.0, "le", "beta(f o phi) = beta(f)")}
    return _report(
        "property.mobius_invariance_logharmonic", {"seed": seed, "instances": n}, computed, expected, tol, t0
    )


def composition_rule(seed=DEFAULT_SEED, n=INSTANCES, tol=1e-9):
    """P_{f o phi} = P_f(phi) phi' + P_phi at random points."""
    t0 = time.perf_counter()
    rng = _rng(seed, "composition_rule")
    entries = standard_entries()
    worst = 0.0
    for _ in range(n):
        f = entries[int(rng.integers(len(entries)))].map
        phi = random_automorphism(rng, 0.5)
        fphi = f.compose(phi)
        dphi = differentiate(phi)
        p_phi = pre_schwarzian_analytic(phi)
        z = complex(_disk_point(rng, 0.6))
        w = evaluate(phi, z)
        lhs = eval_pre_schwarzian_logharmonic(fphi, z)
        rhs = eval_pre_schwarzian_logharmonic(f, w) * evaluate(dphi, z) + evaluate(p_phi, z)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    computed = {"max_relative_error": worst}
    expected = {"max_relative_error": Bound(0.0, "le", "chain rule for the pre-Schwarzian")}
    return _report("property.composition_rule", {"seed": seed, "instances": n}, computed, expected, tol, t0)


def _random_omega_map(rng):
    """h = exp(c z) with a dilatation that is a shrunken Blaschke product."""
    B, _ = random_blaschke(rng, 2, 0.8)
    rho = 0.2 + 0.7 * rng.random()
    c = complex(_disk_point(rng, 2.0))
    h = ast.exp(ast.mul(ast.const(c), ast.ZVAR))
    return logharmonic_map(h, omega=ast.mul(ast.const(rho), B))


def pde_residual_suite(seed=DEFAULT_SEED, n=INSTANCES, tol=1e-10):
    t0 = time.perf_counter()
    rng = _rng(seed, "pde_residual")
    entries = standard_entries()
    worst = 0.0
    for i in range(n):
        if i % 2:
            f = _random_omega_map(rng)
        else:
            f = entries[int(rng.integers(len(entries)))].map
        z = complex(_disk_point(rng, 0.95))
        if z == 0:
            continue
        worst = max(worst, pde_residual(f, z))
    computed = {"max_residual": worst}
    expected = {"max_residual": Bound(0.0, "le", "logharmonic equation", tol)}
    return _report("property.pde_residual", {"seed": seed, "instances": n}, computed, expected, tol, t0)


def _random_series_function(rng):
    kind = int(rng.integers(3))
    if kind == 0:
        a = complex(_disk_point(rng, 0.95))
        if a == 0:
            return ast.ZVAR
        return ast.div(ast.neg(ast.log(ast.sub(ast.ONE, ast.mul(ast.const(a), ast.ZVAR)))), ast.const(a))
    if kind == 1:
        deg = int(rng.integers(1, 6))
        e = ast.ZERO
        for k in range(1, deg + 1):
            c = complex(rng.normal() + 1j * rng.normal())
            e = ast.add(e, ast.mul(ast.const(c), ast.ipow(ast.ZVAR, k)))
        return e
    alpha = complex(_disk_point(rng, 0.9))
    return ast.sub(mobius(alpha), ast.const(alpha))


def coefficient_bound(seed=DEFAULT_SEED, n=INSTANCES, cfg=None, order=20, tol=1e-9):
    t0 = time.perf_counter()
    rng = _rng(seed, "coefficient_bound")
    worst = -np.inf
    for _ in range(n):
        r = check_coefficient_lemma(_random_series_function(rng), order, cfg, tol)
        worst = max(worst, r.computed["max_abs_coeff"] - 2 * r.computed["beta"])
    computed = {"max_coeff_minus_bound": float(worst)}
    expected = {"max_coeff_minus_bound": Bound(0.0, "le", "|c_n| <= 2 beta")}
    inputs = {"seed": seed, "instances": n, "order": order}
    return _report("property.coefficient_bound", inputs, computed, expected, tol, t0)


def catalog_gaps(cfg=None, tol=1e-3):
    """Both gap inequalities on every catalog map, with twice the tolerance."""
    t0 = time.perf_counter()
    worst31 = worst35 = -np.inf
    for e in standard_entries():
        worst31 = max(worst31, check_gap_thm31(e.map, cfg, tol).computed["gap"])
        worst35 = max(worst35, check_gap_thm35(e.map, cfg, tol).computed["gap_minus_bound"])
    computed = {"max_gap_thm31": worst31, "max_gap_thm35_minus_bound": worst35}
    expected = {
        "max_gap_thm31": Bound(1.0, "le", "gap <= 1", 2 * tol),
        "max_gap_thm35_minus_bound": Bound(0.0, "le", "gap <= beta_log_g + 1", 2 * tol),
    }
    return _report("property.catalog_gaps", {"maps": len(standard_entries())}, computed, expected, tol, t0)


def run_properties(seed=DEFAULT_SEED, cfg=None, n=INSTANCES):
    return [
        schwarz_pick(seed, n, cfg),
        mobius_invariance_analytic(seed, n, cfg),
        mobius_invariance_logharmonic(seed, n, cfg),
        composition_rule(seed, n),
        pde_residual_suite(seed, n),
        coefficient_bound(seed, n, cfg),
        catalog_gaps(cfg),
    ]
