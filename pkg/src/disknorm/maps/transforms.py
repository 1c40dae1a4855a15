"""Affine and Koebe transforms of log f for normalised logharmonic f.

Both take F = log f = log h + conj(log g) with h(0) = g(0) = h'(0) = 1 and
return another normalised harmonic map of the same kind:

* affine:  (F + s conj F) / a,                 a = 1 + s g'(0)
* Koebe:   (F(phi(z)) - F(alpha)) / b,         b = phi'(0) h'(alpha)/h(alpha)

with phi(z) = (z + alpha)/(1 + conj(alpha) z), so that phi(0) = alpha.
"""

from disknorm.errors import DiskNormError, NormalizationViolated
from disknorm.expr import ast
from disknorm.expr.calculus import _add, _div, _mul, _sub, compose, differentiate, mobius
from disknorm.expr.evaluate import evaluate
from disknorm.maps.mappings import HarmonicMap

NORMALIZATION_TOL = 1e-10


def check_normalized(f, tol=NORMALIZATION_TOL):
    try:
        h0 = f.h_value(0)
        g0 = f.g_value(0)
        dh0 = evaluate(f.dlog_h, 0) * h0
    except DiskNormError as e:
        raise NormalizationViolated(f"not analytic and nonzero at 0 ({e})") from e
    bad = {k: v for k, v in {"h(0)": h0, "g(0)": g0, "h'(0)": dh0}.items() if abs(v - 1) > tol}
    if bad:
        raise NormalizationViolated(", ".join(f"{k}={v!r}" for k, v in bad.items()) + " (expected 1)")


def _c(x):
    return ast.const(x)


def affine_transform_logF(f, s):
    s = complex(s)
    if not abs(s) < 1:
        raise ValueError("|s| must be < 1")
    check_normalized(f)
    a = 1 + s * evaluate(f.dlog_g, 0)
    dH = _div(_add(f.dlog_h, _mul(_c(s), f.dlog_g)), _c(a))
    dG = _div(_add(_mul(_c(s.conjugate()), f.dlog_h), f.dlog_g), _c(a.conjugate()))
    H = G = None
    if f.g is not None:
        lh, lg = ast.log(f.h), ast.log(f.g)
        H = _div(_add(lh, _mul(_c(s), lg)), _c(a))
        G = _div(_add(_mul(_c(s.conjugate()), lh), lg), _c(a.conjugate()))
    return HarmonicMap(dH, _div(dG, dH), H, G)


def koebe_transform_logF(f, alpha):
    alpha = complex(alpha)
    if not abs(alpha) < 1:
        raise ValueError("|alpha| must be < 1")
    check_normalized(f)
    phi = mobius(alpha)
    dphi = differentiate(phi)
    b = (1 - abs(alpha) ** 2) * evaluate(f.dlog_h, alpha)
    dH = _div(_mul(compose(f.dlog_h, phi), dphi), _c(b))
    dG = _div(_mul(compose(f.dlog_g, phi), dphi), _c(b.conjugate()))
    H = G = None
    if f.g is not None:
        lh_a = evaluate(ast.log(f.h), alpha)
        lg_a = evaluate(ast.log(f.g), alpha)
        H = _div(_sub(ast.log(compose(f.h, phi)), _c(lh_a)), _c(b))
        G = _div(_sub(ast.log(compose(f.g, phi)), _c(lg_a)), _c(b.conjugate()))
    return HarmonicMap(dH, _div(dG, dH), H, G)
