"""Expression language: parsing, printing, calculus, evaluation and series."""

from disknorm.expr.ast import ONE, ZERO, ZVAR, Expr, as_expr, const
from disknorm.expr.calculus import compose, differentiate, mobius
from disknorm.expr.evaluate import POLE_EPS, evaluate, evaluate_array
from disknorm.expr.parser import parse
from disknorm.expr.printer import to_source
from disknorm.expr.series import (
    DEFAULT_ORDER,
    TaylorSeries,
    series_exp,
    series_integrate,
    series_log,
    taylor_expand,
)

__all__ = [
    "DEFAULT_ORDER",
    "ONE",
    "POLE_EPS",
    "ZERO",
    "ZVAR",
    "Expr",
    "TaylorSeries",
    "as_expr",
    "compose",
    "const",
    "differentiate",
    "evaluate",
    "evaluate_array",
    "mobius",
    "parse",
    "series_exp",
    "series_integrate",
    "series_log",
    "taylor_expand",
    "to_source",
]
