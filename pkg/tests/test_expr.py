import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disknorm.errors import (
    BranchCutArgumentZero,
    ExprSyntaxError,
    NotAnalyticAtZero,
    PoleEncountered,
    UnknownIdentifier,
)
from disknorm.expr import (
    TaylorSeries,
    compose,
    differentiate,
    evaluate,
    evaluate_array,
    mobius,
    parse,
    series_exp,
    series_integrate,
    series_log,
    taylor_expand,
    to_source,
)
from disknorm.expr import ast
from disknorm.expr.calculus import log_derivative
from disknorm.expr.evaluate import compile_array


# ---------------------------------------------------------------- parsing


@pytest.mark.parametrize(
    "src, z, want",
    [
        ("1/(1-z)", 0.5, 2.0),
        ("-z^2", 2.0, -4.0),
        ("2*z+1", 1.5, 4.0),
        ("z^-2", 2.0, 0.25),
        ("2i*z", 1.0, 2j),
        ("i*i", 0.0, -1.0),
        ("exp(log(z))", 0.3 + 0.4j, 0.3 + 0.4j),
        ("z^0.5", -4.0, 2j),
        ("1.5e1 - 5", 0.0, 10.0),
        ("(z+1)*(z-1)", 3.0, 8.0),
        ("8/2/2", 0.0, 2.0),
        ("1-2-3", 0.0, -4.0),
    ],
)
def test_parse_and_evaluate(src, z, want):
    assert evaluate(parse(src), z) == pytest.approx(want, abs=1e-14)


def test_integer_and_real_exponents_differ():
    assert parse("z^2").kind == ast.IPOW
    assert parse("z^2.0").kind == ast.POW


@pytest.mark.parametrize(
    "src, col",
    [
        ("1/(1-z", 7),
        ("1+", 3),
        ("z $ 2", 3),
        ("z^z", 3),
        ("(", 2),
        ("z z", 3),
        ("exp z", 5),
    ],
)
def test_syntax_error_columns(src, col):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src)
    assert info.value.position == col
    assert f"column {col}" in str(info.value)


def test_unknown_identifier_column():
    with pytest.raises(UnknownIdentifier) as info:
        parse("1 + sin(z)")
    assert info.value.position == 5


# ---------------------------------------------------------------- random trees


def _trees(max_leaves=12):
    leaves = st.one_of(
        st.just(ast.ZVAR),
        st.builds(
            ast.const,
            st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False).map(
                lambda c: complex(round(c.real, 3), round(c.imag, 3))
            ),
        ),
    )

    def extend(children):
        return st.one_of(
            st.builds(ast.add, children, children),
            st.builds(ast.sub, children, children),
            st.builds(ast.mul, children, children),
            st.builds(ast.div, children, children),
            st.builds(ast.neg, children),
            st.builds(ast.ipow, children, st.integers(-3, 4)),
            st.builds(ast.rpow, children, st.sampled_from([0.5, 1.5, -0.25, 2.5])),
            st.builds(ast.exp, children),
            st.builds(ast.log, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@settings(max_examples=300, deadline=None)
@given(_trees())
def test_printer_round_trip(e):
    assert parse(to_source(e)) == e


def _safe(e, z):
    try:
        return evaluate(e, z)
    except (PoleEncountered, BranchCutArgumentZero):
        return None


points = st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(_trees(8), points)
def test_derivative_matches_central_difference(e, z):
    h = 1e-5
    vals = [_safe(e, z + s) for s in (h, -h, 1j * h, -1j * h)]
    if any(v is None for v in vals) or _safe(e, z) is None:
        return
    d = _safe(differentiate(e), z)
    if d is None:
        return
    fd = (vals[0] - vals[1]) / (2 * h)
    fd_i = (vals[2] - vals[3]) / (2j * h)
    # away from branch cuts the two stencils agree; skip points near a cut
    if abs(fd - fd_i) > 1e-4 * (1 + abs(fd)) or abs(fd) > 1e6:
        return
    assert abs(d - fd) <= 1e-4 * (1 + abs(fd))


@settings(max_examples=200, deadline=None)
@given(_trees(8), st.lists(points, min_size=1, max_size=6))
def test_array_and_compiled_agree_with_scalar(e, zs):
    z = np.array(zs, dtype=complex)
    arr = evaluate_array(e, z)
    (comp,) = compile_array(e)(z)
    for k, zk in enumerate(zs):
        v = _safe(e, zk)
        if v is None or abs(v) > 1e12:
            continue
        assert arr[k] == pytest.approx(v, rel=1e-9, abs=1e-12)
        assert comp[k] == pytest.approx(v, rel=1e-9, abs=1e-12)


# ---------------------------------------------------------------- evaluation errors


def test_pole_and_branch_errors():
    with pytest.raises(PoleEncountered):
        evaluate(parse("1/z"), 0)
    with pytest.raises(PoleEncountered):
        evaluate(parse("z^-1"), 0)
    with pytest.raises(BranchCutArgumentZero):
        evaluate(parse("log(z)"), 0)
    with pytest.raises(BranchCutArgumentZero):
        evaluate(parse("z^0.5"), 0)


def test_array_evaluation_marks_poles_nan():
    v = evaluate_array(parse("1/(1-z)"), np.array([0.5, 1.0]))
    assert v[0] == 2
    assert np.isnan(v[1])


def test_principal_log_branch():
    assert evaluate(parse("log(z)"), -1) == pytest.approx(1j * math.pi)
    assert evaluate(parse("log(z)"), -1 - 1e-300j).imag == pytest.approx(-math.pi)


# ---------------------------------------------------------------- calculus


def test_derivative_closed_forms():
    z = 0.3 - 0.2j
    assert evaluate(differentiate(parse("1/(1-z)")), z) == pytest.approx(1 / (1 - z) ** 2)
    assert evaluate(differentiate(parse("z/(1-z)^2")), z) == pytest.approx((1 + z) / (1 - z) ** 3)
    assert evaluate(differentiate(parse("log(1-z)")), z) == pytest.approx(-1 / (1 - z))
    assert evaluate(differentiate(parse("(1+z)^0.5")), z) == pytest.approx(0.5 / cmath.sqrt(1 + z))


def test_log_derivative_is_low_order_near_the_boundary():
    # h'/h for the Koebe function is (1+z)/(z(1-z)); a quotient-rule form
    # would lose everything to cancellation at 1 - 1e-8
    e = log_derivative(parse("z/(1-z)^2"))
    r = 1 - 1e-8
    want = (1 + r) / (r * (1 - r))
    assert evaluate(e, r) == pytest.approx(want, rel=1e-7)


def test_mobius_and_compose():
    a = 0.3 + 0.1j
    phi = mobius(a)
    z = 0.2 - 0.5j
    assert evaluate(phi, z) == pytest.approx((z + a) / (1 + a.conjugate() * z))
    assert abs(evaluate(phi, cmath.exp(0.7j))) == pytest.approx(1.0)
    sq = compose(parse("z^2 + 1"), phi)
    assert evaluate(sq, z) == pytest.approx(evaluate(phi, z) ** 2 + 1)


# ---------------------------------------------------------------- series


def test_series_closed_forms():
    n = np.arange(1, 21)
    s = taylor_expand(parse("-log(1-z)"), 20)
    assert np.allclose(s.coeffs[1:], 1 / n, atol=1e-13)
    assert s.coeffs[0] == 0
    e = taylor_expand(parse("exp(z)"), 20)
    assert np.allclose(e.coeffs, [1 / math.factorial(k) for k in range(21)], atol=1e-15)
    k = taylor_expand(parse("z/(1-z)^2"), 20)
    assert np.allclose(k.coeffs, np.arange(21), atol=1e-12)
    b = taylor_expand(parse("(1+z)^0.5"), 6)
    want = [math.comb(1, 0)] + [np.prod([0.5 - j for j in range(m)]) / math.factorial(m) for m in range(1, 7)]
    assert np.allclose(b.coeffs, want, atol=1e-14)


def test_series_exp_log_inverse():
    s = TaylorSeries([0.2, 1.0, -0.5, 0.25, 0.0, 0.1])
    back = series_log(series_exp(s))
    assert np.allclose(back.coeffs, s.coeffs, atol=1e-13)


def test_series_division_and_integral():
    one = TaylorSeries.constant(1, 8)
    geo = one / (one - TaylorSeries.variable(8))
    assert np.allclose(geo.coeffs, 1)
    integral = series_integrate(geo)
    assert np.allclose(integral.coeffs[1:], 1 / np.arange(1, 10))
    z = TaylorSeries.variable(5)
    assert np.allclose(((z * z) / z).coeffs[:5], [0, 1, 0, 0, 0])
    with pytest.raises(NotAnalyticAtZero):
        one / z


def test_series_of_function_singular_at_origin():
    with pytest.raises(NotAnalyticAtZero):
        taylor_expand(parse("1/z"), 5)


@settings(max_examples=100, deadline=None)
@given(st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False))
def test_series_evaluation_matches_function(a):
    # 1/(1 - a z) has coefficients a^n, so the truncated sum at z converges fast
    s = taylor_expand(ast.div(ast.ONE, ast.sub(ast.ONE, ast.mul(ast.const(a), ast.ZVAR))), 40)
    assert np.allclose(s.coeffs, a ** np.arange(41), atol=1e-12)
    z = 0.3
    assert s(z) == pytest.approx(1 / (1 - a * z), abs=1e-12)
