"""Truncated power series at the origin.

A :class:`TaylorSeries` of order N holds c_0..c_N, the coefficients of
1, z, ..., z^N. Binary operations truncate to the smaller order. Division
cancels a common power of z from numerator and denominator, which costs one
order of accuracy per cancelled power.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from disknorm.errors import NotAnalyticAtZero
from disknorm.expr import ast

DEFAULT_ORDER = 64
_ZERO_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        return f"TaylorSeries(order={self.order}, coeffs={self.coeffs.tolist()})"

    @classmethod
    def constant(cls, c, order):
        out = np.zeros(order + 1, dtype=complex)
        out[0] = c
        return cls(out)

    @classmethod
    def variable(cls, order):
        out = np.zeros(order + 1, dtype=complex)
        if order >= 1:
            out[1] = 1
        return cls(out)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TaylorSeries(self.coeffs[: order + 1])

    def _align(self, other):
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        a, b = self._align(other)
        return TaylorSeries(a + b)

    def __sub__(self, other):
        a, b = self._align(other)
        return TaylorSeries(a - b)

    def __neg__(self):
        return TaylorSeries(-self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TaylorSeries):
            return TaylorSeries(self.coeffs * complex(other))
        a, b = self._align(other)
        return TaylorSeries(np.convolve(a, b)[: a.size])

    __rmul__ = __mul__

    def valuation(self):
        nz = np.flatnonzero(np.abs(self.coeffs) > _ZERO_TOL)
        return int(nz[0]) if nz.size else self.order + 1

    def __truediv__(self, other):
        a, b = self._align(other)
        k = TaylorSeries(b).valuation()
        if k > b.size - 1:
            raise NotAnalyticAtZero("division by a series that vanishes to full order")
        if k:
            if TaylorSeries(a).valuation() < k:
                raise NotAnalyticAtZero("denominator vanishes at 0 to higher order than numerator")
            a, b = a[k:], b[k:]
        n = a.size
        q = np.zeros(n, dtype=complex)
        for i in range(n):
            q[i] = (a[i] - np.dot(q[:i], b[i:0:-1])) / b[0]
        return TaylorSeries(q)

    def derivative(self):
        c = self.coeffs
        if c.size == 1:
            return TaylorSeries([0])
        return TaylorSeries(c[1:] * np.arange(1, c.size))

    def __call__(self, z):
        """Horner evaluation of the truncated polynomial."""
        acc = 0j if np.isscalar(z) else np.zeros(np.shape(z), dtype=complex)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc


def series_integrate(s):
    """Termwise antiderivative vanishing at 0; order goes up by one."""
    c = s.coeffs
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] = c / np.arange(1, c.size + 1)
    return TaylorSeries(out)


def series_exp(s):
    a = s.coeffs
    n = a.size
    b = np.zeros(n, dtype=complex)
    b[0] = cmath.exp(a[0])
    ka = a * np.arange(n)
    # n b_n = sum_{k=1}^{n} k a_k b_{n-k}
    for m in range(1, n):
        b[m] = np.dot(ka[1 : m + 1], b[m - 1 :: -1][:m]) / m
    return TaylorSeries(b)


def series_log(s):
    """Principal log at the constant term, continued analytically."""
    c0 = s.coeffs[0]
    if abs(c0) <= _ZERO_TOL:
        raise NotAnalyticAtZero("log of a series vanishing at 0")
    if s.order == 0:
        return TaylorSeries([cmath.log(c0)])
    q = series_integrate(s.derivative() / s.truncate(s.order - 1))
    return TaylorSeries(np.concatenate([[cmath.log(c0)], q.coeffs[1:]]))


def series_pow(s, x):
    if isinstance(x, int) and x >= 0:
        out = TaylorSeries.constant(1, s.order)
        base = s
        while x:
            if x & 1:
                out = out * base
            base = base * base
            x >>= 1
        return out
    if isinstance(x, int):
        return TaylorSeries.constant(1, s.order) / series_pow(s, -x)
    return series_exp(series_log(s) * x)


def taylor_expand(e, order=DEFAULT_ORDER):
    """Coefficients c_0..c_order of ``e`` at 0, by series arithmetic."""
    if order < 0:
        raise ValueError("order must be non-negative")
    pad = 8
    while True:
        s = _expand(e, order + pad)
        if s.order >= order:
            return s.truncate(order)
        pad *= 2


def _expand(e, n):
    memo = {}

    def ex(node):
        hit = memo.get(node)
        if hit is not None:
            return hit
        k = node.kind
        if k == ast.CONST:
            r = TaylorSeries.constant(node.value, n)
        elif k == ast.Z:
            r = TaylorSeries.variable(n)
        elif k == ast.ADD:
            r = ex(node.args[0]) + ex(node.args[1])
        elif k == ast.SUB:
            r = ex(node.args[0]) - ex(node.args[1])
        elif k == ast.MUL:
            r = ex(node.args[0]) * ex(node.args[1])
        elif k == ast.DIV:
            r = ex(node.args[0]) / ex(node.args[1])
        elif k == ast.NEG:
            r = -ex(node.args[0])
        elif k == ast.IPOW:
            r = series_pow(ex(node.args[0]), node.exponent)
        elif k == ast.POW:
            r = series_pow(ex(node.args[0]), node.exponent)
        elif k == ast.EXP:
            r = series_exp(ex(node.args[0]))
        elif k == ast.LOG:
            r = series_log(ex(node.args[0]))
        else:  # pragma: no cover
            raise AssertionError(k)
        memo[node] = r
        return r

    return ex(e)
