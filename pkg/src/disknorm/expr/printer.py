"""Render expression trees back to parser-compatible source text."""

from disknorm.expr import ast

# precedence of the grammar level a rendered node occupies
_EXPR, _TERM, _FACTOR, _POWER, _ATOM = 1, 2, 3, 4, 5


def _number(x):
    return repr(float(x))


def _const(v):
    re, im = v.real, v.imag
    if im == 0:
        s = _number(re)
        return s, (_FACTOR if s.startswith("-") else _ATOM)
    if re == 0:
        s = _number(im) + "i"
        return s, (_FACTOR if s.startswith("-") else _ATOM)
    sign = "-" if im < 0 else "+"
    return f"({_number(re)}{sign}{_number(abs(im))}i)", _ATOM


def _render(e, memo):
    hit = memo.get(e)
    if hit is not None:
        return hit
    k = e.kind
    if k == ast.CONST:
        out = _const(e.value)
    elif k == ast.Z:
        out = ("z", _ATOM)
    elif k in (ast.EXP, ast.LOG):
        inner, _ = _render(e.args[0], memo)
        out = (f"{k}({inner})", _ATOM)
    elif k in (ast.POW, ast.IPOW):
        base = _wrap(e.args[0], _ATOM, memo)
        x = e.exponent if k == ast.IPOW else _number(e.exponent)
        out = (f"{base}^{x}", _POWER)
    elif k == ast.NEG:
        out = ("-" + _wrap(e.args[0], _FACTOR, memo), _FACTOR)
    else:
        level = _EXPR if k in (ast.ADD, ast.SUB) else _TERM
        op = {ast.ADD: "+", ast.SUB: "-", ast.MUL: "*", ast.DIV: "/"}[k]
        left = _wrap(e.args[0], level, memo)
        right = _wrap(e.args[1], level + 1, memo)
        out = (f"{left} {op} {right}", level)
    memo[e] = out
    return out


def _wrap(e, need, memo):
    s, level = _render(e, memo)
    return s if level >= need else f"({s})"


def to_source(e):
    """Source text that parses back to a tree structurally equal to ``e``."""
    return _render(e, {})[0]
