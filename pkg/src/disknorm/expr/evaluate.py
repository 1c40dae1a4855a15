"""Pointwise evaluation of expression trees.

``evaluate`` works on a single complex number and raises on singularities.
``evaluate_array`` is the vectorised path used by the norm engine: it never
raises, and marks singular samples with NaN so callers can skip them.

log and non-integer powers use the principal branch at each point. See
:mod:`disknorm.maps.branch` for evaluation along an analytic branch.
"""

import cmath

import numpy as np

from disknorm.errors import BranchCutArgumentZero, PoleEncountered
from disknorm.expr import ast

POLE_EPS = 1e-14


def evaluate(e, z):
    z = complex(z)
    memo = {}

    def ev(n):
        hit = memo.get(n)
        if hit is not None:
            return hit
        k = n.kind
        if k == ast.CONST:
            v = n.value
        elif k == ast.Z:
            v = z
        elif k == ast.ADD:
            v = ev(n.args[0]) + ev(n.args[1])
        elif k == ast.SUB:
            v = ev(n.args[0]) - ev(n.args[1])
        elif k == ast.MUL:
            v = ev(n.args[0]) * ev(n.args[1])
        elif k == ast.DIV:
            den = ev(n.args[1])
            if abs(den) < POLE_EPS:
                raise PoleEncountered(z, "division by ~0")
            v = ev(n.args[0]) / den
        elif k == ast.NEG:
            v = -ev(n.args[0])
        elif k == ast.IPOW:
            b = ev(n.args[0])
            if n.exponent < 0 and abs(b) < POLE_EPS:
                raise PoleEncountered(z, "negative power of ~0")
            v = b**n.exponent
        elif k == ast.POW:
            b = ev(n.args[0])
            if b == 0:
                raise BranchCutArgumentZero(z)
            v = cmath.exp(n.exponent * cmath.log(b))
        elif k == ast.EXP:
            try:
                v = cmath.exp(ev(n.args[0]))
            except OverflowError:
                raise PoleEncountered(z, "exp overflow") from None
        elif k == ast.LOG:
            b = ev(n.args[0])
            if b == 0:
                raise BranchCutArgumentZero(z)
            v = cmath.log(b)
        else:  # pragma: no cover
            raise AssertionError(k)
        memo[n] = v
        return v

    try:
        v = ev(e)
    except OverflowError:
        raise PoleEncountered(z, "overflow") from None
    if not cmath.isfinite(v):
        raise PoleEncountered(z, "non-finite value")
    return v


def evaluate_array(e, z, memo=None):
    """Evaluate on an array of points; singular samples come back as NaN.

    Passing the same ``memo`` dict to several calls on the same ``z`` array
    shares common subtrees between them.
    """
    z = np.asarray(z, dtype=complex)
    memo = {} if memo is None else memo
    nan = complex(np.nan, np.nan)

    def ev(n):
        hit = memo.get(n)
        if hit is not None:
            return hit
        k = n.kind
        if k == ast.CONST:
            v = np.full(z.shape, n.value)
        elif k == ast.Z:
            v = z
        elif k == ast.ADD:
            v = ev(n.args[0]) + ev(n.args[1])
        elif k == ast.SUB:
            v = ev(n.args[0]) - ev(n.args[1])
        elif k == ast.MUL:
            v = ev(n.args[0]) * ev(n.args[1])
        elif k == ast.DIV:
            den = ev(n.args[1])
            v = np.where(np.abs(den) < POLE_EPS, nan, ev(n.args[0]) / np.where(den == 0, 1, den))
        elif k == ast.NEG:
            v = -ev(n.args[0])
        elif k == ast.IPOW:
            b = ev(n.args[0])
            if n.exponent < 0:
                bad = np.abs(b) < POLE_EPS
                v = np.where(bad, nan, np.where(bad, 1, b) ** n.exponent)
            else:
                v = b**n.exponent
        elif k == ast.POW:
            b = ev(n.args[0])
            bad = b == 0
            v = np.where(bad, nan, np.exp(n.exponent * np.log(np.where(bad, 1, b))))
        elif k == ast.EXP:
            v = np.exp(ev(n.args[0]))
        elif k == ast.LOG:
            b = ev(n.args[0])
            bad = b == 0
            v = np.where(bad, nan, np.log(np.where(bad, 1, b)))
        else:  # pragma: no cover
            raise AssertionError(k)
        memo[n] = v
        return v

    with np.errstate(all="ignore"):
        v = ev(e)
        v = np.where(np.isfinite(v), v, nan)
    return v


_NAN = complex(np.nan, np.nan)


def _div_op(a, b):
    return np.where(np.abs(b) < POLE_EPS, _NAN, a / np.where(b == 0, 1, b))


def _ipow_op(p):
    if p >= 0:
        return lambda b: b**p

    def op(b):
        bad = np.abs(b) < POLE_EPS
        return np.where(bad, _NAN, np.where(bad, 1, b) ** p)

    return op


def _pow_op(x):
    def op(b):
        bad = b == 0
        return np.where(bad, _NAN, np.exp(x * np.log(np.where(bad, 1, b))))

    return op


def _log_op(b):
    bad = b == 0
    return np.where(bad, _NAN, np.log(np.where(bad, 1, b)))


_BINARY = {
    ast.ADD: np.add,
    ast.SUB: np.subtract,
    ast.MUL: np.multiply,
    ast.DIV: _div_op,
}


def compile_array(*exprs):
    """Compile expressions into one vectorised function of z.

    The returned callable maps an array of points to a list with one array
    per expression, with the same NaN conventions as :func:`evaluate_array`.
    Shared subtrees are computed once. This is the fast path for objectives
    that are evaluated many thousands of times.
    """
    slot = {}
    program = []  # (kind, payload, argument slots)

    def visit(n):
        if n in slot:
            return slot[n]
        args = tuple(visit(a) for a in n.args)
        k = n.kind
        if k == ast.CONST:
            step = ("const", n.value, ())
        elif k == ast.Z:
            step = ("z", None, ())
        elif k in _BINARY:
            step = ("call", _BINARY[k], args)
        elif k == ast.NEG:
            step = ("call", np.negative, args)
        elif k == ast.IPOW:
            step = ("call", _ipow_op(n.exponent), args)
        elif k == ast.POW:
            step = ("call", _pow_op(n.exponent), args)
        elif k == ast.EXP:
            step = ("call", np.exp, args)
        elif k == ast.LOG:
            step = ("call", _log_op, args)
        else:  # pragma: no cover
            raise AssertionError(k)
        slot[n] = len(program)
        program.append(step)
        return slot[n]

    outputs = [visit(e) for e in exprs]

    def run(z):
        z = np.asarray(z, dtype=complex)
        vals = [None] * len(program)
        with np.errstate(all="ignore"):
            for i, (kind, payload, args) in enumerate(program):
                if kind == "call":
                    vals[i] = payload(*[vals[a] for a in args])
                elif kind == "const":
                    vals[i] = payload
                else:
                    vals[i] = z
            out = []
            for o in outputs:
                v = np.broadcast_to(np.asarray(vals[o], dtype=complex), z.shape)
                out.append(np.where(np.isfinite(v), v, _NAN))
        return out

    return run
