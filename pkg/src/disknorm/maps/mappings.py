"""Analytic, harmonic and logharmonic maps of the unit disk.

A logharmonic map is stored as f = h * conj(g) with h, g analytic. Everything
the norms need is expressed through the analytic quantities

    h'/h,  g'/g,  h''/h',  omega = g'h/(g h')

which are kept as expression trees; the non-analytic pieces (the
conj(omega) terms) only appear in the pointwise evaluators below.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from disknorm.errors import (
    DegenerateFunction,
    DomainError,
    InvalidExponent,
    NotAnalyticAtZero,
    NotSensePreserving,
    PoleEncountered,
)
from disknorm.expr import ast
from disknorm.expr.ast import Expr
from disknorm.expr.calculus import _add, _div, _mul, _sub, compose, differentiate, log_derivative
from disknorm.expr.evaluate import POLE_EPS, evaluate, evaluate_array
from disknorm.expr.parser import parse
from disknorm.expr.printer import to_source
from disknorm.expr.series import DEFAULT_ORDER, TaylorSeries, series_exp, series_integrate, taylor_expand
from disknorm.maps.branch import evaluate_analytic, radial_integral

# |omega| >= 1 - OMEGA_EPS counts as degenerate; formulas divide by 1 - |omega|^2
OMEGA_EPS = 1e-9


def validation_grid(n_radii=32, n_angles=64, r_max=0.999):
    r = np.linspace(0.0, r_max, n_radii)
    t = np.linspace(0.0, 2 * np.pi, n_angles, endpoint=False)
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


_GRID = validation_grid()


def _expr(x):
    if x is None or isinstance(x, Expr):
        return x
    if isinstance(x, str):
        return parse(x)
    return ast.as_expr(x)


def _check_disk(z):
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"|z| must be < 1, got {abs(z)!r}")
    return z


def _omega_at(omega, z):
    w = evaluate(omega, z)
    if abs(w) >= 1 - OMEGA_EPS:
        raise NotSensePreserving(z, abs(w))
    return w


def _is_zero(e):
    return e.kind == ast.CONST and e.value == 0


# ---------------------------------------------------------------- analytic


def _nonconstant_derivative(h):
    dh = differentiate(h)
    if _is_zero(dh):
        raise DegenerateFunction("h' vanishes identically")
    try:
        s = taylor_expand(dh, DEFAULT_ORDER)
    except (NotAnalyticAtZero, ArithmeticError):
        return dh
    if np.all(np.abs(s.coeffs) < 1e-14):
        raise DegenerateFunction("h' has a zero Taylor series")
    return dh


def pre_schwarzian_analytic(h):
    """P_h = h''/h' as an expression tree."""
    h = _expr(h)
    return log_derivative(_nonconstant_derivative(h))


def schwarzian_analytic(h):
    """S_h = P_h' - P_h^2 / 2."""
    p = pre_schwarzian_analytic(h)
    return _sub(differentiate(p), _mul(ast.const(0.5), ast.ipow(p, 2)))


def dilatation(h, g, grid=None):
    """omega = g'h/(g h'); raises NotSensePreserving if |omega| reaches 1
    on the validation grid."""
    h, g = _expr(h), _expr(g)
    omega = _div(log_derivative(g), log_derivative(h))
    w = evaluate_array(omega, _GRID if grid is None else grid)
    bad = ~(np.abs(w) < 1 - OMEGA_EPS)
    if bad.any():
        i = int(np.argmax(bad))
        raise NotSensePreserving(complex((_GRID if grid is None else grid)[i]), float(np.abs(w[i])))
    return omega


def coanalytic_from_dilatation(h, omega, order=DEFAULT_ORDER):
    """Series of g = exp(integral_0^z omega h'/h), normalised so g(0) = 1."""
    h, omega = _expr(h), _expr(omega)
    if order < 0:
        raise ValueError("order must be non-negative")
    if _is_zero(omega) or order == 0:
        return TaylorSeries.constant(1, order)
    integrand = ast.div(ast.mul(omega, differentiate(h)), h)
    return series_exp(series_integrate(taylor_expand(integrand, order - 1)))


def hyperbolic_derivative(omega, z):
    """|omega'(z)| (1 - |z|^2) / (1 - |omega(z)|^2)."""
    omega = _expr(omega)
    z = _check_disk(z)
    w = _omega_at(omega, z)
    dw = evaluate(differentiate(omega), z)
    return abs(dw) * (1 - abs(z) ** 2) / (1 - abs(w) ** 2)


# ---------------------------------------------------------------- logharmonic


@dataclass(frozen=True, eq=False)
class LogharmonicMap:
    """f = h * conj(g).

    ``g`` may be None when the map was specified through its dilatation; its
    values are then recovered as exp of the radial integral of g'/g.
    """

    h: Expr
    g: Expr | None
    omega: Expr
    dlog_h: Expr
    dlog_g: Expr
    h_locally_univalent: bool = True
    g_nonvanishing: bool = True
    sense_preserving: bool = True
    lambda1: float | None = None
    lambda2: float | None = None
    label: str = field(default="", compare=False)

    @cached_property
    def dh(self):
        return differentiate(self.h)

    @cached_property
    def pre_schwarzian_h(self):
        return log_derivative(self.dh)

    @cached_property
    def pre_schwarzian_psi(self):
        """P_psi for psi' = h' g, i.e. P_h + g'/g."""
        return _add(self.pre_schwarzian_h, self.dlog_g)

    @cached_property
    def psi_prime(self):
        return None if self.g is None else _mul(self.dh, self.g)

    @cached_property
    def domega(self):
        return differentiate(self.omega)

    @property
    def valid(self):
        return self.h_locally_univalent and self.g_nonvanishing and self.sense_preserving

    def require_valid(self):
        if not self.h_locally_univalent:
            raise DegenerateFunction("h' vanishes or is singular on the validation grid")
        if not self.g_nonvanishing:
            raise PoleEncountered(None, "g vanishes or is singular on the validation grid")
        if not self.sense_preserving:
            w = evaluate_array(self.omega, _GRID)
            bad = ~(np.abs(w) < 1 - OMEGA_EPS)
            i = int(np.argmax(bad))
            raise NotSensePreserving(complex(_GRID[i]), float(np.abs(w[i])))
        return self

    # values of the analytic factors, on their analytic branches
    def h_value(self, z):
        return evaluate_analytic(self.h, z)

    def g_value(self, z):
        if self.g is not None:
            return evaluate_analytic(self.g, z)
        return np.exp(radial_integral(self.dlog_g, z))

    def __call__(self, z):
        return self.h_value(z) * np.conj(self.g_value(z))

    def compose(self, phi):
        """f o phi for an analytic self-map phi given as an Expr."""
        dphi = differentiate(phi)
        return dataclasses.replace(
            self,
            h=compose(self.h, phi),
            g=None if self.g is None else compose(self.g, phi),
            omega=compose(self.omega, phi),
            dlog_h=_mul(compose(self.dlog_h, phi), dphi),
            dlog_g=_mul(compose(self.dlog_g, phi), dphi),
            label=f"{self.label} o phi" if self.label else "",
        )

    def to_json(self):
        return {
            "h": to_source(self.h),
            "g": None if self.g is None else to_source(self.g),
            "omega": to_source(self.omega),
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
        }


def _flags(h, dh, dlog_h, dlog_g, omega, g):
    grid = _GRID
    memo = {}
    vdh = evaluate_array(dh, grid, memo)
    # quotient-rule denominators of h' can underflow the pole guard near the
    # circle; h * (h'/h) is the same number computed from low-order pieces
    redo = ~np.isfinite(vdh)
    if redo.any():
        vdh[redo] = (evaluate_array(h, grid, memo) * evaluate_array(dlog_h, grid, memo))[redo]
    locally_univalent = bool(np.all(np.isfinite(vdh)) and np.all(np.abs(vdh) > POLE_EPS))
    if g is not None:
        vg = evaluate_array(g, grid, memo)
        nonvanishing = bool(np.all(np.isfinite(vg)) and np.all(np.abs(vg) > POLE_EPS))
    else:
        # g = exp(integral of g'/g) cannot vanish where g'/g is finite; the
        # origin is exempt because removable 0/0 forms land there
        v = evaluate_array(dlog_g, grid[grid != 0], {})
        nonvanishing = bool(np.all(np.isfinite(v)))
    w = evaluate_array(omega, grid, memo)
    finite = np.isfinite(w)
    if g is None:
        finite |= grid == 0
    sense = bool(np.all(finite) and np.all(np.abs(w[np.isfinite(w)]) < 1 - OMEGA_EPS))
    return locally_univalent, nonvanishing, sense


def logharmonic_map(h, g=None, omega=None, *, strict=True, label="", lambda1=None, lambda2=None):
    """Build f = h * conj(g) from h and either g or the dilatation omega.

    When both are given they must agree on the validation grid. With
    ``strict`` the map is rejected unless h is locally univalent, g is
    nonvanishing and |omega| < 1 on the grid.
    """
    h, g, omega = _expr(h), _expr(g), _expr(omega)
    if g is None and omega is None:
        raise ValueError("give g or omega")
    dh = differentiate(h)
    dlog_h = log_derivative(h)
    if g is not None:
        dlog_g = log_derivative(g)
        derived = _div(dlog_g, dlog_h)
        if omega is not None:
            memo = {}
            a = evaluate_array(derived, _GRID, memo)
            b = evaluate_array(omega, _GRID, memo)
            ok = np.isfinite(a) & np.isfinite(b)
            if np.any(np.abs(a[ok] - b[ok]) > 1e-9 * (1 + np.abs(b[ok]))):
                raise ValueError("g and omega are inconsistent")
        else:
            omega = derived
    else:
        dlog_g = _mul(omega, dlog_h)
    lu, nv, sp = _flags(h, dh, dlog_h, dlog_g, omega, g)
    f = LogharmonicMap(h, g, omega, dlog_h, dlog_g, lu, nv, sp, lambda1, lambda2, label)
    return f.require_valid() if strict else f


def map_from_json(obj, strict=True):
    return logharmonic_map(
        obj["h"],
        g=obj.get("g"),
        omega=obj.get("omega"),
        strict=strict,
        lambda1=obj.get("lambda1"),
        lambda2=obj.get("lambda2"),
    )


def power_construct(H, G, lambda1, lambda2):
    """f = H'^lambda1 * conj(G'^lambda2) with the powers on analytic branches."""
    H, G = _expr(H), _expr(G)
    lambda1, lambda2 = float(lambda1), float(lambda2)
    if not (lambda1 > 0 and lambda2 > 0):
        raise InvalidExponent(f"exponents must be positive, got {lambda1}, {lambda2}")
    dH, dG = _nonconstant_derivative(H), _nonconstant_derivative(G)
    pH = log_derivative(dH)
    pG = log_derivative(dG)
    h = ast.rpow(dH, lambda1) if lambda1 != 1 else dH
    g = ast.rpow(dG, lambda2) if lambda2 != 1 else dG
    dlog_h = _mul(ast.const(lambda1), pH)
    dlog_g = _mul(ast.const(lambda2), pG)
    if H == G:
        omega = ast.const(lambda2 / lambda1)
    elif _is_zero(pG):
        omega = ast.ZERO
    else:
        omega = _mul(ast.const(lambda2 / lambda1), _div(pG, pH))
    lu, nv, sp = _flags(h, differentiate(h), dlog_h, dlog_g, omega, dG)
    if not nv:
        raise DegenerateFunction("G' vanishes on the validation grid")
    f = LogharmonicMap(h, g, omega, dlog_h, dlog_g, lu, nv, sp, lambda1, lambda2)
    return f.require_valid()


# pointwise evaluators ------------------------------------------------------


def eval_pre_schwarzian_logharmonic(f, z):
    """P_f = h''/h' + g'/g - conj(omega) omega' / (1 - |omega|^2)."""
    z = _check_disk(z)
    w = _omega_at(f.omega, z)
    return evaluate(f.pre_schwarzian_psi, z) - w.conjugate() * evaluate(f.domega, z) / (1 - abs(w) ** 2)


def jacobian_logharmonic(f, z):
    """J_f = |h'(z) g(z)|^2 (1 - |omega(z)|^2)."""
    z = _check_disk(z)
    w = evaluate(f.omega, z)
    dh = f.h_value(z) * evaluate(f.dlog_h, z) if f.h.multivalued else evaluate(f.dh, z)
    return abs(dh * f.g_value(z)) ** 2 * (1 - abs(w) ** 2)


def pde_residual(f, z):
    """|conj(f_zbar)/conj(f) - omega f_z / f| from the structural Wirtinger
    derivatives f_z = h' conj(g), f_zbar = h conj(g')."""
    z = _check_disk(z)
    h = f.h_value(z)
    g = f.g_value(z)
    dh = h * evaluate(f.dlog_h, z) if f.h.multivalued else evaluate(f.dh, z)
    dg = g * evaluate(f.dlog_g, z)
    fv = h * g.conjugate()
    if abs(fv) < POLE_EPS:
        raise PoleEncountered(z, "f vanishes")
    f_z = dh * g.conjugate()
    f_zbar = h * dg.conjugate()
    w = evaluate(f.omega, z)
    return abs(f_zbar.conjugate() / fv.conjugate() - w * f_z / fv)


# ---------------------------------------------------------------- harmonic


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """F = H + conj(G), kept through H' and the dilatation omega = G'/H'.

    ``H_part``/``G_part`` are optional and only needed for values of F.
    """

    dH: Expr
    omega: Expr
    H_part: Expr | None = None
    G_part: Expr | None = None

    @cached_property
    def dG(self):
        return _mul(self.omega, self.dH)

    @cached_property
    def pre_schwarzian_H(self):
        return log_derivative(self.dH)

    @cached_property
    def schwarzian_H(self):
        p = self.pre_schwarzian_H
        return _sub(differentiate(p), _mul(ast.const(0.5), ast.ipow(p, 2)))

    @cached_property
    def domega(self):
        return differentiate(self.omega)

    @cached_property
    def d2omega(self):
        return differentiate(self.domega)

    def __call__(self, z):
        if self.H_part is None or self.G_part is None:
            raise ValueError("this harmonic map only carries derivative data")
        return evaluate(self.H_part, z) + evaluate(self.G_part, z).conjugate()


def harmonic_map(H=None, G=None, omega=None, dH=None):
    """F = H + conj(G). Give H (or H') and one of G, omega."""
    H, G, omega, dH = _expr(H), _expr(G), _expr(omega), _expr(dH)
    if dH is None:
        if H is None:
            raise ValueError("give H or dH")
        dH = differentiate(H)
    if omega is None:
        if G is None:
            raise ValueError("give G or omega")
        omega = _div(differentiate(G), dH)
    v = evaluate_array(dH, _GRID)
    if not (np.all(np.isfinite(v)) and np.all(np.abs(v) > POLE_EPS)):
        raise DegenerateFunction("H' vanishes or is singular on the validation grid")
    return HarmonicMap(dH, omega, H, G)


def log_of(f):
    """The harmonic map log f = log h + conj(log g); same dilatation as f."""
    H = ast.log(f.h)
    G = None if f.g is None else ast.log(f.g)
    return HarmonicMap(f.dlog_h, f.omega, H, G)


def eval_pre_schwarzian_harmonic(F, z):
    """P_F = H''/H' - conj(omega) omega' / (1 - |omega|^2)."""
    z = _check_disk(z)
    w = _omega_at(F.omega, z)
    return evaluate(F.pre_schwarzian_H, z) - w.conjugate() * evaluate(F.domega, z) / (1 - abs(w) ** 2)


def eval_schwarzian_harmonic(F, z):
    """S_F = S_H + conj(w)/(1-|w|^2) (P_H w' - w'') - 3/2 (w' conj(w)/(1-|w|^2))^2."""
    z = _check_disk(z)
    w = _omega_at(F.omega, z)
    dw = evaluate(F.domega, z)
    d2w = evaluate(F.d2omega, z)
    p = evaluate(F.pre_schwarzian_H, z)
    q = w.conjugate() / (1 - abs(w) ** 2)
    return evaluate(F.schwarzian_H, z) + q * (p * dw - d2w) - 1.5 * (dw * q) ** 2


def pre_schwarzian_harmonic_zw(F, z, w):
    """P_F with conj(z) replaced by an independent variable ``w``.

    P_F(z, conj(z)) is the pre-Schwarzian; holding ``w`` fixed makes it an
    analytic function of z, which is how (P_F)_z is meant.
    """
    om_bar = evaluate(F.omega, complex(w).conjugate()).conjugate()
    om = evaluate(F.omega, z)
    return evaluate(F.pre_schwarzian_H, z) - om_bar * evaluate(F.domega, z) / (1 - om * om_bar)
