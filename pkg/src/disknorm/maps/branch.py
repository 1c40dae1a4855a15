"""Evaluation along analytic branches.

Pointwise principal logs can jump inside the disk (Koebe's derivative
(1+z)/(1-z)^3 winds past the negative axis), so values of log u and u^x are
obtained by continuing from the origin instead:

    log u(z) = Log u(0) + integral_0^1 (u'/u)(t z) z dt

with the integral done by adaptive Simpson.
"""

import cmath

from disknorm.errors import BranchCutArgumentZero
from disknorm.expr import ast
from disknorm.expr.calculus import differentiate
from disknorm.expr.evaluate import evaluate

SIMPSON_TOL = 1e-11


def adaptive_simpson(f, a, b, tol=SIMPSON_TOL, max_depth=50):
    """Integrate a (complex-valued) function over [a, b]."""

    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6 * (fa + 4 * fm + fb)

    def rec(a, b, fa, fm, fb, whole, tol, depth):
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        err = left + right - whole
        if depth <= 0 or abs(err) <= 15 * tol:
            return left + right + err / 15
        return rec(a, m, fa, flm, fm, left, tol / 2, depth - 1) + rec(m, b, fm, frm, fb, right, tol / 2, depth - 1)

    fa, fb, fm = f(a), f(b), f((a + b) / 2)
    return rec(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)


def radial_integral(integrand, z, tol=SIMPSON_TOL):
    """integral_0^z of an Expr along the segment [0, z]."""
    z = complex(z)
    if z == 0:
        return 0j
    return adaptive_simpson(lambda t: evaluate(integrand, t * z) * z, 0.0, 1.0, tol)


def continued_log(u, z, tol=SIMPSON_TOL):
    """log u(z) on the branch that is principal at 0."""
    u0 = evaluate(u, 0)
    if u0 == 0:
        raise BranchCutArgumentZero(0)
    du = differentiate(u)
    if du.kind == ast.CONST and du.value == 0:
        return cmath.log(u0)
    return cmath.log(u0) + radial_integral(ast.div(du, u), z, tol)


def evaluate_analytic(e, z, tol=SIMPSON_TOL):
    """Like :func:`evaluate`, but logs and real powers follow the branch
    continued radially from their principal value at the origin."""
    if not e.multivalued:
        return evaluate(e, z)
    z = complex(z)
    memo = {}

    def ev(n):
        hit = memo.get(n)
        if hit is not None:
            return hit
        if not n.multivalued:
            v = evaluate(n, z)
        elif n.kind == ast.LOG:
            v = continued_log(n.args[0], z, tol)
        elif n.kind == ast.POW:
            v = cmath.exp(n.exponent * continued_log(n.args[0], z, tol))
        else:
            vals = [ev(a) for a in n.args]
            v = evaluate(ast.rebuild(n, [ast.const(x) for x in vals]), z)
        memo[n] = v
        return v

    return ev(e)
