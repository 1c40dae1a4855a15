"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a PASS/FAIL line; conftest prints them at the end of the
session. Criteria that do not hold are left failing.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from disknorm.expr import evaluate_array, mobius, parse
from disknorm.expr.calculus import _mul
from disknorm.expr import ast
from disknorm.maps import catalog
from disknorm.maps.mappings import schwarzian_analytic
from disknorm.norms import bloch_seminorm_derivative, pre_schwarzian_norm, psi_pre_schwarzian_norm, schwarzian_norm
from disknorm.theorems.checks import check_schwarzian_regressions
from disknorm.theorems.formulas import brute_force_max_E, n_t
from disknorm.theorems.suites import N_T_PARAMS

RESULTS = []


def record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _close(x, want, tol):
    return abs(x - want) <= tol


# ---------------------------------------------------------------- 1, 2


def test_criterion_1_first_sharpness_example():
    t0 = time.perf_counter()
    f = catalog("thm31_ex1").map
    pf = pre_schwarzian_norm(f).value
    ppsi = psi_pre_schwarzian_norm(f).value
    elapsed = time.perf_counter() - t0
    ok = _close(pf, 5, 1e-3) and _close(ppsi, 6, 1e-3) and elapsed < 5
    detail = f"||P_f|| = {pf:.6f} (5), ||P_psi|| = {ppsi:.6f} (6), {elapsed:.2f} s (< 5 s)"
    assert record(1, ok, detail), detail


def test_criterion_2_second_sharpness_example():
    f = catalog("thm31_ex2").map
    pf = pre_schwarzian_norm(f).value
    ppsi = psi_pre_schwarzian_norm(f).value
    gap = abs(ppsi - pf)
    ok = _close(pf, 5, 1e-3) and _close(ppsi, 6, 1e-3) and _close(gap, 1, 2e-3)
    detail = f"||P_f|| = {pf:.6f}, ||P_psi|| = {ppsi:.6f}, gap = {gap:.6f} (1 within 2e-3)"
    assert record(2, ok, detail), detail


# ---------------------------------------------------------------- 3


def test_criterion_3_extremal_family():
    parts = []
    fam = catalog("thm36_family(0.5)").map
    ph = pre_schwarzian_norm(fam.h).value
    bg = bloch_seminorm_derivative(fam.dlog_g).value
    parts.append((_close(ph, 4, 1e-3) and _close(bg, 2, 1e-3), f"||P_H|| = {ph:.6f}, beta_logG = {bg:.6f}"))

    worst = max(abs(n_t(t) - brute_force_max_E(t, 1_000_000)) for t in N_T_PARAMS)
    parts.append((worst <= 1e-8 and len(N_T_PARAMS) == 20, f"N_t vs 1e6-grid max: {worst:.1e} over 20 t"))

    n999 = n_t(0.999)
    parts.append((n999 >= 6.9, f"N_0.999 = {n999:.6f} (>= 6.9 required)"))

    for t in (0.5, 0.9, 0.999):
        pf = pre_schwarzian_norm(catalog(f"thm36_family({t})").map).value
        ok = n_t(t) - 1e-3 <= pf <= 7 + 1e-3
        parts.append((ok, f"t={t}: ||P_F|| = {pf:.6f} in [{n_t(t) - 1e-3:.6f}, 7.001]"))

    ok = all(p for p, _ in parts)
    detail = "; ".join(("" if p else "[fails] ") + d for p, d in parts)
    assert record(3, ok, detail), detail


# ---------------------------------------------------------------- 4


def test_criterion_4_koebe_power_extremal():
    l1, l2 = 1.0, 0.5
    f = catalog(f"koebe_power({l1},{l2})").map
    worst = 0.0
    for r in (0.1, 0.5, 0.9):
        up, lo = (1 + r) / (1 - r) ** 3, (1 - r) / (1 + r) ** 3
        pairs = [
            (abs(f.h_value(r)), up**l1),
            (abs(f.g_value(r)), up**l2),
            (abs(f(r)), up ** (l1 + l2)),
            (abs(f.h_value(-r)), lo**l1),
            (abs(f.g_value(-r)), lo**l2),
            (abs(f(-r)), lo ** (l1 + l2)),
        ]
        worst = max(worst, max(abs(a - b) / b for a, b in pairs))
    s = bloch_seminorm_derivative(f.dlog_h).value
    ok = worst <= 1e-9 and _close(s, 6 * l1, 1e-3)
    detail = f"growth bounds max rel error {worst:.1e} (1e-9); sup (1-|z|^2)|f_z/f| = {s:.6f} (6)"
    assert record(4, ok, detail), detail


# ---------------------------------------------------------------- 5, 7


def _verify_all(path):
    cmd = [sys.executable, "-m", "disknorm", "verify", "--suite", "all", "--seed", "42", "--out", str(path)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    return proc.returncode, json.loads(path.read_text())


@pytest.fixture(scope="module")
def two_runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("verify")
    return _verify_all(d / "a.json"), _verify_all(d / "b.json")


def test_criterion_5_property_suite(two_runs):
    (_, data), _ = two_runs
    reps = {r["check_id"]: r for r in data["reports"] if r["check_id"].startswith("property.")}
    c = {k.split(".", 1)[1]: r["computed"] for k, r in reps.items()}
    seconds = sum(r["runtime_ms"] for r in reps.values()) / 1000
    instances = min(r["inputs"]["instances"] for r in reps.values() if "instances" in r["inputs"])
    parts = [
        (instances >= 200, f"{instances} instances"),
        (c["schwarz_pick"]["max_pointwise"] <= 1 + 1e-12, f"omega* max {c['schwarz_pick']['max_pointwise']!r}"),
        (c["mobius_invariance_analytic"]["max_abs_difference"] <= 5e-4, "Moebius analytic %.1e" % c["mobius_invariance_analytic"]["max_abs_difference"]),
        (
            c["mobius_invariance_logharmonic"]["max_abs_difference"] <= 5e-4,
            "Moebius logharmonic %.1e" % c["mobius_invariance_logharmonic"]["max_abs_difference"],
        ),
        (c["composition_rule"]["max_relative_error"] <= 1e-9, "composition %.1e" % c["composition_rule"]["max_relative_error"]),
        (c["pde_residual"]["max_residual"] < 1e-10, "PDE residual %.1e" % c["pde_residual"]["max_residual"]),
        (
            c["coefficient_bound"]["max_coeff_minus_bound"] <= 1e-9,
            "|a_n| - 2 beta %.1e" % c["coefficient_bound"]["max_coeff_minus_bound"],
        ),
        (c["catalog_gaps"]["max_gap_thm31"] <= 1 + 2e-3, "gap %.6f" % c["catalog_gaps"]["max_gap_thm31"]),
        (
            c["catalog_gaps"]["max_gap_thm35_minus_bound"] <= 2e-3,
            "gap - (beta_log_g + 1) %.6f" % c["catalog_gaps"]["max_gap_thm35_minus_bound"],
        ),
        (seconds < 60, f"{seconds:.1f} s (< 60 s)"),
    ]
    ok = all(p for p, _ in parts)
    detail = "; ".join(("" if p else "[fails] ") + d for p, d in parts)
    assert record(5, ok, detail), detail


def _strip_timing(data):
    data = json.loads(json.dumps(data))
    data["manifest"].pop("wall_clock_s")
    data["manifest"]["flags"].pop("out")
    for r in data["reports"]:
        r.pop("runtime_ms")
    return data


def test_criterion_7_determinism(two_runs):
    (code_a, a), (code_b, b) = two_runs
    same = _strip_timing(a) == _strip_timing(b)
    ok = same and code_a == code_b == 0
    detail = f"two seeded runs identical without timing fields: {same}; exit codes {code_a}, {code_b}"
    assert record(7, ok, detail), detail


# ---------------------------------------------------------------- 6


def test_criterion_6_schwarzian_regressions():
    rng = np.random.default_rng(6)
    z = 0.95 * np.sqrt(rng.random(500)) * np.exp(2j * np.pi * rng.random(500))
    mob = 0.0
    for _ in range(50):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        c = 0.3 * (rng.normal() + 1j * rng.normal())
        d = 1 + 0j
        # (a z + b)/(c z + d) with a d - b c != 0 and no pole in the disk
        if abs(a * d - b * c) < 1e-3 or abs(c) >= 0.9:
            continue
        m = ast.div(ast.add(_mul(ast.const(a), ast.ZVAR), ast.const(b)), ast.add(_mul(ast.const(c), ast.ZVAR), ast.ONE))
        mob = max(mob, float(np.max(np.abs(evaluate_array(schwarzian_analytic(m), z)))))
    auto = mobius(0.5 - 0.2j)
    mob = max(mob, float(np.max(np.abs(evaluate_array(schwarzian_analytic(auto), z)))))
    koebe = schwarzian_norm(parse("z/(1-z)^2")).value
    identity = check_schwarzian_regressions().computed["identity_max_rel_error"]
    ok = mob < 1e-12 and _close(koebe, 6, 1e-3) and identity <= 1e-6
    detail = f"Moebius |S| max {mob:.1e} (1e-12); ||S_k|| = {koebe:.6f} (6); S = P_z - P^2/2 rel error {identity:.1e} (1e-6)"
    assert record(6, ok, detail), detail
