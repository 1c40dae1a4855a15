"""Bloch seminorms, pre-Schwarzian and Schwarzian norms, and sup of the
hyperbolic derivative, each as a weighted supremum of a vectorised objective."""

from __future__ import annotations

import numpy as np

from disknorm.errors import NotSensePreserving, PoleEncountered
from disknorm.expr.calculus import differentiate
from disknorm.expr.evaluate import compile_array, evaluate_array
from disknorm.maps.mappings import (
    _GRID,
    OMEGA_EPS,
    HarmonicMap,
    LogharmonicMap,
    _expr,
    pre_schwarzian_analytic,
    schwarzian_analytic,
)
from disknorm.norms.engine import weighted_sup

# hyperbolic_sup divides 1 - |z|^2 by 1 - |w|^2; each carries a relative
# rounding error of a few eps over its size, so samples where either is
# smaller than this are excluded (keeps the ratio good to ~1e-10)
HYPERBOLIC_MIN_GAP = 1e-5


def _abs_objective(e):
    run = compile_array(e)
    return lambda z: np.abs(run(z)[0])


def _dilatation_factor(w):
    """conj(w)/(1 - |w|^2), -inf where |w| is within OMEGA_EPS of 1 (past
    double precision, not a pole) and NaN where w itself is singular."""
    q = np.conj(w) / (1 - np.abs(w) ** 2)
    q[np.abs(w) >= 1 - OMEGA_EPS] = -np.inf
    q[np.isnan(w)] = np.nan
    return q


def _mask(out, q):
    out[np.isneginf(q.real)] = -np.inf
    out[np.isnan(q.real)] = np.nan
    return out


def _harmonic_pre_objective(P, omega, domega):
    """|P - conj(w) w'/(1 - |w|^2)| with P the analytic part's contribution."""
    run = compile_array(P, omega, domega)

    def obj(z):
        p, w, dw = run(z)
        q = _dilatation_factor(w)
        return _mask(np.abs(p - q * dw), q)

    return obj


def bloch_seminorm_analytic(u, cfg=None):
    """sup (1 - |z|^2) |u'(z)|."""
    u = _expr(u)
    return weighted_sup(_abs_objective(differentiate(u)), 1, cfg, "bloch_analytic")


def bloch_seminorm_derivative(du, cfg=None):
    """Same seminorm when u' is already at hand (e.g. h'/h for u = log h)."""
    return weighted_sup(_abs_objective(_expr(du)), 1, cfg, "bloch_analytic")


def logharmonic_bloch_norm(f: LogharmonicMap, cfg=None):
    """(seminorm estimate, |f(0)| + seminorm) for f = h conj(g)."""
    run = compile_array(f.dlog_h, f.dlog_g)
    a, b = run(np.zeros(1))
    if not np.isfinite(a[0] + b[0]):
        raise PoleEncountered(0j, "h'/h or g'/g is singular at the origin")
    f0 = abs(f(0))
    if f0 == 0:
        raise PoleEncountered(0j, "f vanishes at the origin")

    def obj(z):
        a, b = run(z)
        return np.abs(a) + np.abs(b)

    est = weighted_sup(obj, 1, cfg, "bloch_logharmonic")
    return est, f0 + est.value


def harmonic_bloch_seminorms(F: HarmonicMap, cfg=None):
    """Bloch seminorms of the analytic and co-analytic parts of F = H + conj(G)."""
    return (
        weighted_sup(_abs_objective(F.dH), 1, cfg, "bloch_analytic"),
        weighted_sup(_abs_objective(F.dG), 1, cfg, "bloch_analytic"),
    )


def pre_schwarzian_norm(m, cfg=None):
    """sup (1 - |z|^2) |P(z)| for an analytic Expr, a LogharmonicMap or a
    HarmonicMap."""
    if isinstance(m, LogharmonicMap):
        obj = _harmonic_pre_objective(m.pre_schwarzian_psi, m.omega, m.domega)
        return weighted_sup(obj, 1, cfg, "preschwarzian_logharmonic")
    if isinstance(m, HarmonicMap):
        obj = _harmonic_pre_objective(m.pre_schwarzian_H, m.omega, m.domega)
        return weighted_sup(obj, 1, cfg, "preschwarzian_harmonic")
    return weighted_sup(_abs_objective(pre_schwarzian_analytic(m)), 1, cfg, "preschwarzian_analytic")


def psi_pre_schwarzian_norm(f: LogharmonicMap, cfg=None):
    """||P_psi|| for the analytic psi with psi' = h' g, via P_h + g'/g."""
    return weighted_sup(_abs_objective(f.pre_schwarzian_psi), 1, cfg, "preschwarzian_analytic")


def schwarzian_norm(m, cfg=None):
    """sup (1 - |z|^2)^2 |S(z)| for an analytic Expr or a HarmonicMap."""
    if isinstance(m, HarmonicMap):
        run = compile_array(m.schwarzian_H, m.pre_schwarzian_H, m.omega, m.domega, m.d2omega)

        def obj(z):
            s, p, w, dw, d2w = run(z)
            q = _dilatation_factor(w)
            return _mask(np.abs(s + q * (p * dw - d2w) - 1.5 * (dw * q) ** 2), q)

        return weighted_sup(obj, 2, cfg, "schwarzian_harmonic")
    if isinstance(m, LogharmonicMap):
        raise TypeError("the Schwarzian norm is defined here for analytic and harmonic maps")
    return weighted_sup(_abs_objective(schwarzian_analytic(m)), 2, cfg, "schwarzian_analytic")


def hyperbolic_sup(omega, cfg=None):
    """sup of |w'|(1 - |z|^2)/(1 - |w|^2); requires |w| < 1 on the validation grid."""
    omega = _expr(omega)
    w = evaluate_array(omega, _GRID)
    bad = ~(np.abs(w) < 1 - OMEGA_EPS)
    if bad.any():
        i = int(np.argmax(bad))
        raise NotSensePreserving(complex(_GRID[i]), float(np.abs(w[i])))
    run = compile_array(omega, differentiate(omega))

    def obj(z):
        w, dw = run(z)
        gap_w = 1 - np.abs(w) ** 2
        gap_z = 1 - np.abs(z) ** 2
        out = _mask(np.abs(dw) * gap_z / gap_w, _dilatation_factor(w))
        out[(gap_w < HYPERBOLIC_MIN_GAP) | (gap_z < HYPERBOLIC_MIN_GAP)] = -np.inf
        return out

    return weighted_sup(obj, 0, cfg, "hyperbolic_sup")
