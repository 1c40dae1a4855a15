"""Symbolic differentiation and substitution on expression trees."""

from disknorm.expr import ast
from disknorm.expr.ast import ONE, ZERO


def _is(e, c):
    return e.kind == ast.CONST and e.value == c


# The constructors below fold literals and drop additive zeros and
# multiplicative ones; derivative trees blow up quickly without this.
def _add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    return ast.add(a, b)


def _sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return ast.neg(b)
    return ast.sub(a, b)


def _mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    return ast.mul(a, b)


def _div(a, b):
    if _is(b, 1):
        return a
    if _is(a, 0) and not _is(b, 0):
        return ZERO
    return ast.div(a, b)


def differentiate(e):
    """d/dz of ``e`` by the structural rules of calculus."""
    memo = {}

    def d(n):
        hit = memo.get(n)
        if hit is not None:
            return hit
        k = n.kind
        if k == ast.CONST:
            r = ZERO
        elif k == ast.Z:
            r = ONE
        elif k == ast.ADD:
            r = _add(d(n.args[0]), d(n.args[1]))
        elif k == ast.SUB:
            r = _sub(d(n.args[0]), d(n.args[1]))
        elif k == ast.NEG:
            du = d(n.args[0])
            r = ZERO if _is(du, 0) else ast.neg(du)
        elif k == ast.MUL:
            u, v = n.args
            r = _add(_mul(d(u), v), _mul(u, d(v)))
        elif k == ast.DIV:
            u, v = n.args
            du, dv = d(u), d(v)
            if _is(dv, 0):
                r = _div(du, v)
            else:
                r = _div(_sub(_mul(du, v), _mul(u, dv)), ast.ipow(v, 2))
        elif k == ast.IPOW:
            u, p = n.args[0], n.exponent
            if p == 0:
                r = ZERO
            else:
                base = ONE if p == 1 else (u if p == 2 else ast.ipow(u, p - 1))
                r = _mul(_mul(ast.const(p), base), d(u))
        elif k == ast.POW:
            u, x = n.args[0], n.exponent
            r = _mul(_mul(ast.const(x), ast.rpow(u, x - 1)), d(u))
        elif k == ast.EXP:
            r = _mul(n, d(n.args[0]))
        elif k == ast.LOG:
            r = log_derivative(n.args[0])
        else:  # pragma: no cover
            raise AssertionError(k)
        memo[n] = r
        return r

    return d(e)


def compose(outer, inner):
    """Substitute ``inner`` for z in ``outer``."""
    memo = {}

    def s(n):
        hit = memo.get(n)
        if hit is not None:
            return hit
        if n.kind == ast.Z:
            r = inner
        elif not n.args:
            r = n
        else:
            r = ast.rebuild(n, [s(a) for a in n.args])
        memo[n] = r
        return r

    return s(outer)


def mobius(alpha):
    """The disk automorphism z -> (z + alpha)/(1 + conj(alpha) z) as an Expr."""
    a = complex(alpha)
    return ast.div(ast.add(ast.ZVAR, ast.const(a)), ast.add(ONE, ast.mul(ast.const(a.conjugate()), ast.ZVAR)))


def log_derivative(e):
    """e'/e, distributed over products, quotients and powers.

    Equal to ``differentiate(e) / e`` but keeps denominators at the order of
    the factors they come from: (1/(1-z)^3)'/(1/(1-z)^3) becomes 3/(1-z)
    rather than a ratio of two high-order poles, which matters close to the
    unit circle.
    """
    memo = {}

    def dl(n):
        hit = memo.get(n)
        if hit is not None:
            return hit
        k = n.kind
        if k == ast.CONST:
            r = ZERO
        elif k == ast.Z:
            r = ast.div(ONE, ast.ZVAR)
        elif k == ast.MUL:
            r = _add(dl(n.args[0]), dl(n.args[1]))
        elif k == ast.DIV:
            r = _sub(dl(n.args[0]), dl(n.args[1]))
        elif k == ast.NEG:
            r = dl(n.args[0])
        elif k in (ast.IPOW, ast.POW):
            r = _mul(ast.const(n.exponent), dl(n.args[0]))
        elif k == ast.EXP:
            r = differentiate(n.args[0])
        else:
            r = _div(differentiate(n), n)
        memo[n] = r
        return r

    return dl(e)
