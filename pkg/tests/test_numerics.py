"""Jet and interval backend tests: frozen examples, finite-difference oracles,
and the containment/validity property suites."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pagecert.numerics import (
    DomainError,
    Interval,
    Jet2,
    Sign,
    int_arith,
    int_sign,
    jet_div,
    jet_mul,
    jet_sqrt,
)

from conftest import central_fd


# ---------------------------------------------------------------------------
# Jet arithmetic: frozen examples
# ---------------------------------------------------------------------------


def test_jet_mul_identity():
    x = Jet2.var(2.0)
    one = Jet2.const(1.0)
    out = jet_mul(one, x)
    assert (out.v, out.d1, out.d2) == (2.0, 1.0, 0.0)


def test_jet_mul_square():
    x = Jet2.var(2.0)
    out = jet_mul(x, x)
    assert (out.v, out.d1, out.d2) == (4.0, 4.0, 2.0)


def test_jet_mul_sin_cos():
    # jets of sin and cos at 0; product must match d/dx of sin*cos = cos 2x
    s = Jet2(0.0, 1.0, 0.0)
    c = Jet2(1.0, 0.0, -1.0)
    out = jet_mul(s, c)
    assert out.v == pytest.approx(0.0, abs=1e-15)
    assert out.d1 == pytest.approx(1.0, abs=1e-15)   # cos(0) = 1
    assert out.d2 == pytest.approx(0.0, abs=1e-15)   # -2 sin(0) = 0


def test_jet_sqrt_examples():
    out = jet_sqrt(Jet2(4.0, 1.0, 0.0))
    assert (out.v, out.d1, out.d2) == (2.0, 0.25, -0.03125)
    out = jet_sqrt(Jet2(1.0, 0.0, 0.0))
    assert (out.v, out.d1, out.d2) == (1.0, 0.0, 0.0)


def test_jet_sqrt_fd_oracle():
    # sqrt(u) along u(x) = 9 + 6x + x^2, jet at x = 0 vs central differences
    u = lambda x: math.sqrt(9.0 + 6.0 * x + x * x)
    fd1, fd2 = central_fd(u, 0.0)
    out = jet_sqrt(Jet2(9.0, 6.0, 2.0))
    assert out.v == 3.0
    assert out.d1 == pytest.approx(fd1, rel=1e-8)
    assert out.d2 == pytest.approx(fd2, rel=1e-4)


def test_jet_sqrt_domain_error():
    with pytest.raises(DomainError):
        jet_sqrt(Jet2(0.0, 1.0, 0.0))
    with pytest.raises(DomainError):
        jet_sqrt(Jet2(-1.0, 0.0, 0.0))


def test_jet_div_self():
    a = Jet2(3.0, 0.7, -0.2)
    out = jet_div(a, a)
    assert out.v == 1.0
    assert out.d1 == pytest.approx(0.0, abs=1e-16)
    assert out.d2 == pytest.approx(0.0, abs=1e-16)


def test_jet_div_reciprocal():
    out = jet_div(Jet2.const(1.0), Jet2.var(2.0))
    assert (out.v, out.d1, out.d2) == (0.5, -0.25, 0.25)


def test_jet_div_zero():
    with pytest.raises(DomainError):
        jet_div(Jet2.const(1.0), Jet2.const(0.0))


def test_jet_div_mul_roundtrip():
    a = Jet2(2.3, -1.1, 0.4)
    b = Jet2(1.7, 0.3, -2.0)
    out = jet_mul(jet_div(a, b), b)
    assert out.v == pytest.approx(a.v, rel=1e-15)
    assert out.d1 == pytest.approx(a.d1, rel=1e-14)
    assert out.d2 == pytest.approx(a.d2, rel=1e-14)


# ---------------------------------------------------------------------------
# Interval arithmetic: frozen examples
# ---------------------------------------------------------------------------


def test_interval_mul_monotone():
    out = Interval(1, 2) * Interval(-3, -1)
    assert out.encloses(Interval(-6, -1))
    assert out.lo == pytest.approx(-6, abs=1e-13)
    assert out.hi == pytest.approx(-1, abs=1e-13)


def test_interval_sqrt():
    out = Interval(0, 4).sqrt()
    assert out.encloses(Interval(0, 2))
    assert out.hi == pytest.approx(2.0, abs=1e-14)


def test_interval_mul_sign_mixed():
    out = Interval(-1, 1) * Interval(-1, 1)
    assert out.encloses(Interval(-1, 1))
    assert out.lo == pytest.approx(-1, abs=1e-14)
    assert out.hi == pytest.approx(1, abs=1e-14)


def test_interval_division_by_zero_is_entire():
    assert (Interval(1, 2) / Interval(-1, 1)).is_entire()
    assert (Interval(1, 2) / Interval(0, 0)).is_entire()


def test_interval_sqrt_negative_is_entire():
    assert Interval(-2, -1).sqrt().is_entire()


def test_interval_powi_even_tight():
    out = Interval(-1, 1).powi(2)
    assert out.lo <= 0.0 <= out.hi
    assert out.hi == pytest.approx(1.0, abs=1e-14)
    assert out.lo >= -1e-300  # tight at zero, not [-1, 1]


def test_int_sign():
    assert int_sign(Interval(0.1, 0.2)) is Sign.POSITIVE
    assert int_sign(Interval(-2, -1)) is Sign.NEGATIVE
    assert int_sign(Interval(-0.1, 0.1)) is Sign.INCONCLUSIVE


def test_int_arith_dispatch():
    assert int_arith("+", Interval(1, 2), Interval(3, 4)).encloses(Interval(4, 6))
    assert int_arith("-", Interval(1, 2), Interval(1, 1)).encloses(Interval(0, 1))
    assert int_arith("/", Interval(1, 1), Interval(2, 2)).contains(0.5)
    assert int_arith("sqrt", Interval(4, 9)).encloses(Interval(2, 3))
    assert int_arith("powi", Interval(2, 2), n=3).contains(8.0)
    assert int_arith("neg", Interval(1, 2)).encloses(Interval(-2, -1))


def test_outward_widening():
    # every primitive operation steps endpoints at least one ulp outward
    a = Interval(1.0, 1.0)
    out = a + Interval(1.0, 1.0)
    assert out.lo < 2.0 < out.hi
    out = a * a
    assert out.lo < 1.0 < out.hi


# ---------------------------------------------------------------------------
# Property suites
# ---------------------------------------------------------------------------

finite = st.floats(
    min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False
)


@st.composite
def interval_st(draw):
    a = draw(finite)
    b = draw(finite)
    return Interval(min(a, b), max(a, b))


@settings(max_examples=1000, deadline=None)
@given(interval_st(), interval_st(), st.sampled_from("+-*/"))
def test_interval_validity_and_containment(a, b, op):
    """lo <= hi after every operation; exact point arithmetic is contained."""
    out = int_arith(op, a, b)
    assert out.lo <= out.hi
    xa, xb = a.mid, b.mid
    if op == "+":
        exact = xa + xb
    elif op == "-":
        exact = xa - xb
    elif op == "*":
        exact = xa * xb
    else:
        if b.lo <= 0.0 <= b.hi:
            assert out.is_entire()
            return
        exact = xa / xb
    assert out.contains(exact)


# random expression trees evaluated under all backends
_LEAF = st.one_of(
    st.just("x"),
    st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False),
)
_tree_st = st.recursive(
    _LEAF,
    lambda children: st.one_of(
        st.tuples(st.just("+"), children, children),
        st.tuples(st.just("-"), children, children),
        st.tuples(st.just("*"), children, children),
        st.tuples(st.just("/"), children, children),
        st.tuples(st.just("sqrt"), children),
        st.tuples(st.just("neg"), children),
        st.tuples(st.just("powi"), children, st.integers(min_value=0, max_value=4)),
    ),
    max_leaves=12,
)


def _eval_tree(tree, x):
    if tree == "x":
        return x
    if isinstance(tree, float):
        if isinstance(x, Interval):
            return Interval.point(tree)
        return tree
    op = tree[0]
    if op in "+-*/":
        a = _eval_tree(tree[1], x)
        b = _eval_tree(tree[2], x)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        return a / b
    if op == "sqrt":
        v = _eval_tree(tree[1], x)
        return v.sqrt() if isinstance(v, Interval) else math.sqrt(v)
    if op == "neg":
        return -_eval_tree(tree[1], x)
    if op == "powi":
        v = _eval_tree(tree[1], x)
        return v.powi(tree[2]) if isinstance(v, Interval) else v ** tree[2]
    raise AssertionError(op)


@settings(max_examples=1000, deadline=None)
@given(
    _tree_st,
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False),
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False),
)
def test_interval_containment_on_random_expressions(tree, x, width):
    """Plain evaluation at any point of a window lies inside the interval
    evaluation over that window."""
    window = Interval(x - width, x + width)
    try:
        exact = _eval_tree(tree, x)
    except (ValueError, ZeroDivisionError, OverflowError):
        return  # point evaluation left the domain: nothing to check
    if math.isnan(exact) or math.isinf(exact):
        return
    enclosure = _eval_tree(tree, window)
    assert enclosure.lo <= enclosure.hi
    assert enclosure.contains(exact)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False),
    st.lists(finite, min_size=3, max_size=3),
)
def test_jet_polynomial_product_rule(x, coeffs):
    """Jets of polynomial products match the expanded polynomial's jets."""
    a, b, c = coeffs
    xj = Jet2.var(x)
    p = xj * xj + Jet2.const(a) * xj + Jet2.const(b)
    q = Jet2.const(c) * xj + Jet2.const(1.0)
    prod = jet_mul(p, q)
    # derivative of (x^2+ax+b)(cx+1) computed by hand
    d1 = (2 * x + a) * (c * x + 1) + (x * x + a * x + b) * c
    d2 = 2 * (c * x + 1) + 2 * (2 * x + a) * c
    assert prod.d1 == pytest.approx(d1, rel=1e-12, abs=1e-9)
    assert prod.d2 == pytest.approx(d2, rel=1e-12, abs=1e-9)


# ---------------------------------------------------------------------------
# Jets vs finite differences on the bundled profiles
# ---------------------------------------------------------------------------


def test_jets_match_finite_differences_on_profiles(all_metrics, params):
    from pagecert.metrics import gprime_over_w_expr

    rng = np.random.RandomState(7)
    profiles = [expr for m in all_metrics for expr in m.f]
    profiles.append(gprime_over_w_expr(params))
    for expr in profiles:
        for x in rng.uniform(-0.99, 0.99, 100):
            jet = expr.eval_jet(float(x))
            fd1, fd2 = central_fd(expr, float(x))
            assert abs(jet.d1 - fd1) < 1e-6 * max(1.0, abs(jet.d1))
            assert abs(jet.d2 - fd2) < 1e-4 * max(1.0, abs(jet.d2))
