"""Executable checks of the inequalities and sharpness values.

Each check computes a few norms with the engine and compares them with an
expected value or bound. Engine values are lower bounds of suprema, so
inequality checks are one-sided (computed <= bound + tol) and only the known
closed-form values are compared two-sided.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from disknorm.errors import DomainError
from disknorm.expr.printer import to_source
from disknorm.expr.series import taylor_expand
from disknorm.expr.evaluate import evaluate_array
from disknorm.maps.catalog import KOEBE, CatalogEntry, koebe_power, standard_entries
from disknorm.maps.mappings import (
    _expr,
    eval_pre_schwarzian_harmonic,
    eval_schwarzian_harmonic,
    harmonic_map,
    log_of,
    pre_schwarzian_harmonic_zw,
    schwarzian_analytic,
)
from disknorm.maps.transforms import affine_transform_logF, check_normalized, koebe_transform_logF
from disknorm.norms import (
    bloch_seminorm_analytic,
    bloch_seminorm_derivative,
    hyperbolic_sup,
    logharmonic_bloch_norm,
    pre_schwarzian_norm,
    psi_pre_schwarzian_norm,
    schwarzian_norm,
)
from disknorm.theorems.formulas import brute_force_max_E, extremal_radius, n_t, profile_E

DEFAULT_TOL = 1e-3


@dataclass(frozen=True)
class Bound:
    value: float
    relation: str = "eq"  # eq: |c - v| <= tol, le: c <= v + tol, ge: c >= v - tol
    provenance: str = ""
    tolerance: float | None = None

    def holds(self, computed, tol):
        tol = self.tolerance if self.tolerance is not None else tol
        if computed is None or math.isnan(computed):
            return False
        if self.relation == "eq":
            return abs(computed - self.value) <= tol
        if self.relation == "le":
            return computed <= self.value + tol
        if self.relation == "ge":
            return computed >= self.value - tol
        raise ValueError(self.relation)

    def to_json(self):
        out = {"value": self.value, "relation": self.relation, "provenance": self.provenance}
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        return out


@dataclass
class CheckReport:
    check_id: str
    inputs: dict
    computed: dict
    expected: dict
    tolerance: float
    passed: bool
    runtime_ms: int = 0
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "check_id": self.check_id,
            "inputs": self.inputs,
            "computed": self.computed,
            "expected": {k: b.to_json() for k, b in self.expected.items()},
            "tolerance": self.tolerance,
            "pass": self.passed,
            "failures": self.failures,
            "runtime_ms": self.runtime_ms,
        }


def _report(check_id, inputs, computed, expected, tol, t0, extra_ok=True):
    computed = {k: float(v) for k, v in computed.items()}
    failures = [k for k, b in expected.items() if not b.holds(computed.get(k), tol)]
    if not extra_ok:
        failures.append("converged")
    return CheckReport(
        check_id,
        inputs,
        computed,
        expected,
        tol,
        not failures,
        int(round((time.perf_counter() - t0) * 1000)),
        failures,
    )


def _unpack(f):
    if isinstance(f, CatalogEntry):
        return f.map, f.expected, f.name
    return f, {}, f.label


def _inputs(f, name, **kw):
    out = {"map": name or None, **f.to_json()}
    out.update(kw)
    return out


def _copy(expected, key, new_key=None, tolerance=None):
    e = expected[key]
    return {new_key or key: Bound(e.value, e.relation, e.provenance, tolerance)}


def check_gap_thm31(f, cfg=None, tol=DEFAULT_TOL):
    """| ||P_f|| - ||P_psi|| | <= 1 with psi' = h' g."""
    t0 = time.perf_counter()
    f, known, name = _unpack(f)
    a = pre_schwarzian_norm(f, cfg)
    b = psi_pre_schwarzian_norm(f, cfg)
    computed = {"pre_schwarzian": a.value, "pre_schwarzian_psi": b.value, "gap": abs(a.value - b.value)}
    expected = {"gap": Bound(1.0, "le", "gap bound")}
    for k in ("pre_schwarzian", "pre_schwarzian_psi"):
        if k in known and known[k].relation == "eq":
            expected.update(_copy(known, k))
    if "psi_gap" in known:
        # the gap combines two estimates, so it gets twice the tolerance
        expected.update(_copy(known, "psi_gap", "gap", 2 * tol))
    return _report("gap_thm31", _inputs(f, name), computed, expected, tol, t0)


def check_corollary32(f, psi_class="univalent", cfg=None, tol=DEFAULT_TOL):
    """||P_f|| <= 7 when psi is univalent, <= 5 when psi is convex.

    The class of psi is the caller's assertion and is not verified.
    """
    bounds = {"univalent": 7.0, "convex": 5.0}
    if psi_class not in bounds:
        raise ValueError(f"psi_class must be one of {sorted(bounds)}")
    t0 = time.perf_counter()
    f, _, name = _unpack(f)
    a = pre_schwarzian_norm(f, cfg)
    expected = {"pre_schwarzian": Bound(bounds[psi_class], "le", f"psi asserted {psi_class}")}
    return _report(
        "corollary32", _inputs(f, name, psi_class=psi_class), {"pre_schwarzian": a.value}, expected, tol, t0
    )


def check_becker_thm33(f, cfg=None, tol=DEFAULT_TOL, expect_hypothesis=None):
    """Whether ||P_f|| + ||omega*|| <= 1, the sufficient condition for psi
    to be univalent.

    ``hypothesis_holds`` is 1 or 0. With ``expect_hypothesis`` given the
    check passes when the verdict matches it; otherwise it passes when the
    hypothesis holds (a failed hypothesis is inconclusive, not a
    counterexample).
    """
    t0 = time.perf_counter()
    f, _, name = _unpack(f)
    a = pre_schwarzian_norm(f, cfg)
    w = hyperbolic_sup(f.omega, cfg)
    total = a.value + w.value
    holds = total <= 1 + tol
    computed = {
        "pre_schwarzian": a.value,
        "hyperbolic_sup": w.value,
        "sum": total,
        "hypothesis_holds": float(holds),
    }
    want = True if expect_hypothesis is None else bool(expect_hypothesis)
    expected = {"hypothesis_holds": Bound(float(want), "eq", "sufficiency verdict", 0.0)}
    return _report("becker_thm33", _inputs(f, name), computed, expected, tol, t0)


def check_bloch_equiv_thm34(f, cfg=None, tol=DEFAULT_TOL):
    """beta_{log h} <= beta_f <= 2 beta_{log h} and beta_{log g} <= beta_{log h}."""
    t0 = time.perf_counter()
    f, known, name = _unpack(f)
    semi, norm = logharmonic_bloch_norm(f, cfg)
    bh = bloch_seminorm_derivative(f.dlog_h, cfg).value
    bg = bloch_seminorm_derivative(f.dlog_g, cfg).value
    computed = {"beta_f": semi.value, "norm_f": norm, "bloch_log_h": bh, "bloch_log_g": bg}
    expected = {
        "beta_f": Bound(2 * bh, "le", "beta_f <= beta_log_h + beta_log_g <= 2 beta_log_h"),
        "bloch_log_g": Bound(bh, "le", "|omega| < 1 gives beta_log_g <= beta_log_h"),
    }
    # the lower end of the sandwich, phrased on the same quantity
    computed["beta_f_minus_bloch_log_h"] = semi.value - bh
    expected["beta_f_minus_bloch_log_h"] = Bound(0.0, "ge", "|h'/h| <= |h'/h| + |g'/g|")
    for k in ("bloch_log_h", "bloch_log_g"):
        if k in known and known[k].relation == "eq":
            expected.update(_copy(known, k, k + "_value"))
            computed[k + "_value"] = computed[k]
    return _report("bloch_equiv_thm34", _inputs(f, name), computed, expected, tol, t0)


def check_gap_thm35(f, cfg=None, tol=DEFAULT_TOL, t=None):
    """| ||P_f|| - ||P_h|| | <= beta_{log g} + 1; for the extremal family at
    parameter t also N_t <= ||P_F|| <= 7."""
    t0 = time.perf_counter()
    entry = f
    f, known, name = _unpack(f)
    if t is None and isinstance(entry, CatalogEntry):
        t = entry.params.get("t")
    a = pre_schwarzian_norm(f, cfg).value
    ph = pre_schwarzian_norm(f.h, cfg).value
    bg = bloch_seminorm_derivative(f.dlog_g, cfg).value
    computed = {
        "pre_schwarzian": a,
        "pre_schwarzian_h": ph,
        "bloch_log_g": bg,
        "gap_minus_bound": abs(a - ph) - (bg + 1),
    }
    expected = {"gap_minus_bound": Bound(0.0, "le", "gap <= beta_log_g + 1")}
    inputs = _inputs(f, name)
    if t is not None:
        inputs["t"] = t
        computed["n_t"] = n_t(t)
        expected["pre_schwarzian"] = Bound(7.0, "le", "||P_H|| + beta_log_G + 1 = 7")
        computed["pre_schwarzian_minus_n_t"] = a - n_t(t)
        expected["pre_schwarzian_minus_n_t"] = Bound(0.0, "ge", "real-axis maximum N_t")
        for k in ("pre_schwarzian_h", "bloch_log_g"):
            if k in known and known[k].relation == "eq":
                expected.update(_copy(known, k))
    return _report("gap_thm35", inputs, computed, expected, tol, t0)


def check_coefficient_lemma(u, order=20, cfg=None, tol=1e-9):
    """|c_n| <= 2 beta_u for the Taylor coefficients c_1..c_order of u."""
    t0 = time.perf_counter()
    u = _expr(u)
    coeffs = taylor_expand(u, order).coeffs
    beta = bloch_seminorm_analytic(u, cfg).value
    worst = max((abs(c) for c in coeffs[1 : order + 1]), default=0.0)
    computed = {"beta": beta, "max_abs_coeff": float(worst), "constant_term": abs(coeffs[0])}
    expected = {"max_abs_coeff": Bound(2 * beta, "le", "|c_n| <= 2 beta_u")}
    return _report("coefficient_lemma", {"u": to_source(u), "order": order}, computed, expected, tol, t0)


def check_growth_thm38(lambda1, lambda2, r, cfg=None, tol=DEFAULT_TOL, rel_tol=1e-9):
    """Growth bounds for the Koebe extremal k'^l1 conj(k'^l2), which attains
    the upper bounds at z = r and the lower bounds at z = -r, and
    sup (1 - |z|^2)|f_z/f| = 6 lambda1."""
    if not 0 <= r < 1:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    t0 = time.perf_counter()
    entry = koebe_power(lambda1, lambda2)
    f = entry.map
    up = (1 + r) / (1 - r) ** 3
    lo = (1 - r) / (1 + r) ** 3
    computed, expected = {}, {}
    lam = {"h": lambda1, "g": lambda2, "f": lambda1 + lambda2}
    values = {
        "h": lambda z: abs(f.h_value(z)),
        "g": lambda z: abs(f.g_value(z)),
        "f": lambda z: abs(f(z)),
    }
    for part, fn in values.items():
        for side, z, base in (("upper", r, up), ("lower", -r, lo)):
            key = f"abs_{part}_{side}"
            bound = base ** lam[part]
            computed[key] = fn(z)
            expected[key] = Bound(bound, "eq", f"{side} growth bound attained", rel_tol * bound)
    est = bloch_seminorm_derivative(f.dlog_h, cfg)
    computed["log_derivative_h"] = est.value
    expected["log_derivative_h"] = Bound(6 * lambda1, "eq", "lambda1 ||P_k|| = 6 lambda1")
    inputs = {"lambda1": lambda1, "lambda2": lambda2, "r": r}
    return _report("growth_thm38", inputs, computed, expected, tol, t0)


def check_uniform_univalence_thm36(f, cfg=None, tol=DEFAULT_TOL):
    """||P_{log f}|| <= 2 + 4 beta_H with H = log h, and the estimate converged."""
    t0 = time.perf_counter()
    f, _, name = _unpack(f)
    check_normalized(f)
    est = pre_schwarzian_norm(log_of(f), cfg)
    beta = bloch_seminorm_derivative(f.dlog_h, cfg).value
    computed = {
        "pre_schwarzian_log_f": est.value,
        "bloch_H": beta,
        "converged": float(est.converged),
    }
    expected = {"pre_schwarzian_log_f": Bound(2 + 4 * beta, "le", "2 + 2 alpha_0 <= 2 + 4 beta_H")}
    return _report("uniform_univalence_thm36", _inputs(f, name), computed, expected, tol, t0, est.converged)


def check_n_t_formula(ts, n=1_000_000, tol=1e-8):
    """Closed form N_t against a brute-force maximum of E(., t) on n radii,
    and against E at the closed-form maximiser."""
    t0 = time.perf_counter()
    worst_grid = worst_self = 0.0
    for t in ts:
        worst_grid = max(worst_grid, abs(n_t(t) - brute_force_max_E(t, n)))
        worst_self = max(worst_self, abs(n_t(t) - profile_E(extremal_radius(t), t)))
    computed = {"max_grid_error": worst_grid, "max_self_error": worst_self}
    expected = {
        "max_grid_error": Bound(0.0, "le", "brute-force grid maximum"),
        "max_self_error": Bound(0.0, "le", "N_t = E(r0)", 1e-12),
    }
    inputs = {"t": [float(t) for t in ts], "grid": n}
    return _report("n_t_formula", inputs, computed, expected, tol, t0)


def check_schwarzian_regressions(cfg=None, tol=DEFAULT_TOL, seed=0, points=20):
    """S = 0 for Moebius maps, ||S_k|| = 6 for Koebe, and the harmonic
    identity S_F = (P_F)_z - P_F^2/2 by central differences in z with
    conj(z) held fixed."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    zs = 0.8 * np.sqrt(rng.random(points)) * np.exp(2j * np.pi * rng.random(points))
    mob = 0.0
    for src in ("z/(1+z)", "1/(1-z)", "(z+0.3)/(1-0.3*z)", "(2*z-1i)/(1+0.5i*z)"):
        S = schwarzian_analytic(src)
        mob = max(mob, float(np.max(np.abs(evaluate_array(S, zs)))))
    koebe = schwarzian_norm(KOEBE, cfg).value
    worst = 0.0
    for F in _harmonic_samples():
        for z in zs:
            z = complex(z)
            step, w = 1e-5, z.conjugate()
            dp = (
                pre_schwarzian_harmonic_zw(F, z + step, w) - pre_schwarzian_harmonic_zw(F, z - step, w)
            ) / (2 * step)
            lhs = eval_schwarzian_harmonic(F, z)
            rhs = dp - 0.5 * eval_pre_schwarzian_harmonic(F, z) ** 2
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    computed = {"moebius_max_abs": mob, "koebe_schwarzian_norm": koebe, "identity_max_rel_error": worst}
    expected = {
        "moebius_max_abs": Bound(0.0, "le", "S vanishes on Moebius maps", 1e-12),
        "koebe_schwarzian_norm": Bound(6.0, "eq", "S_k = -6/(1-z^2)^2"),
        "identity_max_rel_error": Bound(0.0, "le", "S_F = (P_F)_z - P_F^2/2", 1e-6),
    }
    return _report("schwarzian_regressions", {"seed": seed, "points": points}, computed, expected, tol, t0)


def _harmonic_samples():
    """log f for the catalog maps plus affine and Koebe transforms of one."""
    out = [log_of(e.map) for e in standard_entries()]
    f = standard_entries()[0].map
    out.append(affine_transform_logF(f, 0.3 - 0.2j))
    out.append(koebe_transform_logF(f, 0.4 + 0.1j))
    out.append(harmonic_map(H="z/(1-z)^2", omega="(0.5-z)/(1-0.5*z)"))
    return out


__all__ = [
    "Bound",
    "CheckReport",
    "check_becker_thm33",
    "check_bloch_equiv_thm34",
    "check_coefficient_lemma",
    "check_corollary32",
    "check_gap_thm31",
    "check_gap_thm35",
    "check_growth_thm38",
    "check_n_t_formula",
    "check_schwarzian_regressions",
    "check_uniform_univalence_thm36",
]
