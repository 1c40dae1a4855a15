"""Immutable expression trees for analytic functions of one complex variable.

Trees are built through the constructor functions in this module, which fold
operations whose operands are all literal constants. No other rewriting
happens here; :mod:`disknorm.expr.calculus` adds a few identity rules for the
trees it generates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from numbers import Number

CONST = "const"
Z = "z"
ADD = "add"
SUB = "sub"
MUL = "mul"
DIV = "div"
NEG = "neg"
POW = "pow"
IPOW = "ipow"
EXP = "exp"
LOG = "log"

ARITY = {CONST: 0, Z: 0, ADD: 2, SUB: 2, MUL: 2, DIV: 2, NEG: 1, POW: 1, IPOW: 1, EXP: 1, LOG: 1}
BINARY = (ADD, SUB, MUL, DIV)


@dataclass(frozen=True, eq=False, repr=False)
class Expr:
    kind: str
    args: tuple = ()
    value: complex | None = None
    exponent: float | int | None = None
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if len(self.args) != ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {ARITY[self.kind]} children, got {len(self.args)}")
        if self.kind == CONST:
            v = complex(self.value)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"non-finite constant {v!r}")
            object.__setattr__(self, "value", v)
        if self.kind == POW:
            x = float(self.exponent)
            if not math.isfinite(x):
                raise ValueError("pow exponent must be finite")
            object.__setattr__(self, "exponent", x)
        if self.kind == IPOW:
            if isinstance(self.exponent, bool) or int(self.exponent) != self.exponent:
                raise ValueError("ipow exponent must be an integer")
            object.__setattr__(self, "exponent", int(self.exponent))
        payload = self.value if self.kind == CONST else self.exponent
        object.__setattr__(self, "_hash", hash((self.kind, self.args, payload)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr) or self._hash != other._hash:
            return False
        return (
            self.kind == other.kind
            and self.value == other.value
            and self.exponent == other.exponent
            and self.args == other.args
        )

    def __repr__(self):
        if self.kind == CONST:
            return f"const({_fmt_complex(self.value)})"
        if self.kind == Z:
            return "z"
        inner = ", ".join(repr(a) for a in self.args)
        if self.kind in (POW, IPOW):
            inner += f", {self.exponent!r}"
        return f"{self.kind}({inner})"

    def __str__(self):
        from disknorm.expr.printer import to_source

        return to_source(self)

    @property
    def is_const(self):
        return self.kind == CONST

    def walk(self):
        """Yield every distinct node once, children before parents."""
        seen = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if node in seen:
                continue
            if expanded or not node.args:
                seen.add(node)
                yield node
            else:
                stack.append((node, True))
                stack.extend((a, False) for a in reversed(node.args))

    @property
    def multivalued(self):
        """True if the tree contains a log or non-integer power."""
        return any(n.kind in (LOG, POW) for n in self.walk())

    # operator sugar, used heavily by the map catalog
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, p):
        if isinstance(p, int) and not isinstance(p, bool):
            return ipow(self, p)
        return rpow(self, p)


def _fmt_complex(v):
    if v.imag == 0:
        return repr(v.real)
    return repr(v)


def as_expr(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, Number):
        return const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


def const(c):
    return Expr(CONST, value=complex(c))


ZVAR = Expr(Z)
ZERO = const(0)
ONE = const(1)


def _folded(kind, args, fn, exponent=None):
    if all(a.kind == CONST for a in args):
        try:
            v = fn(*(a.value for a in args))
        except (ZeroDivisionError, ValueError, OverflowError):
            v = None
        if v is not None and cmath.isfinite(v):
            return const(v)
    return Expr(kind, tuple(args), exponent=exponent)


def add(a, b):
    return _folded(ADD, (a, b), lambda x, y: x + y)


def sub(a, b):
    return _folded(SUB, (a, b), lambda x, y: x - y)


def mul(a, b):
    return _folded(MUL, (a, b), lambda x, y: x * y)


def div(a, b):
    return _folded(DIV, (a, b), lambda x, y: x / y)


def neg(a):
    return _folded(NEG, (a,), lambda x: -x)


def ipow(a, n):
    return _folded(IPOW, (a,), lambda x: x**n, exponent=n)


def rpow(a, x):
    x = float(x)
    return _folded(POW, (a,), lambda v: cmath.exp(x * cmath.log(v)), exponent=x)


def exp(a):
    return _folded(EXP, (a,), cmath.exp)


def log(a):
    return _folded(LOG, (a,), cmath.log)


def rebuild(node, args):
    """Reconstruct ``node`` with new children, folding constants."""
    k = node.kind
    if k == ADD:
        return add(*args)
    if k == SUB:
        return sub(*args)
    if k == MUL:
        return mul(*args)
    if k == DIV:
        return div(*args)
    if k == NEG:
        return neg(*args)
    if k == IPOW:
        return ipow(args[0], node.exponent)
    if k == POW:
        return rpow(args[0], node.exponent)
    if k == EXP:
        return exp(*args)
    if k == LOG:
        return log(*args)
    return node
