import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moyalkw import (
    DomainError,
    Expr,
    UnboundSymbol,
    canonicalize,
    differentiate,
    equivalent_on_samples,
    evaluate,
    exp,
    log,
    modulus,
    power,
    sqrt,
)
from moyalkw.expr import RR, X0, X1, X2, X3, evaluate_exact
from moyalkw.numbers import GaussQ

Z_ABS = modulus(X1 + X2 * GaussQ(0, 1))
V = -(RR * log(Z_ABS)) - log(X3)


def test_derivative_in_y():
    assert (differentiate(V, "x3") + power(X3, -1)).is_zero()


def test_derivative_without_dependence():
    assert differentiate(log(Z_ABS), "x0").is_zero()


def test_derivative_of_log_modulus():
    expected = X1 * power(X1 * X1 + X2 * X2, -1)
    ok, witness = equivalent_on_samples(differentiate(log(Z_ABS), "x1"), expected, {"x1": (0.5, 2), "x2": (0.5, 2)})
    assert ok, witness


def test_evaluate_examples():
    assert evaluate(log(Z_ABS) * -0.5, {"x1": 1.0, "x2": 0.0}) == pytest.approx(0.0)
    assert evaluate(V, {"r": 1.0, "x1": 0.0, "x2": 1.0, "x3": 1.0}) == pytest.approx(0.0)


def test_pole_raises_domain_error():
    with pytest.raises(DomainError):
        evaluate(power(X3, -1), {"x3": 0.0})


def test_unbound_symbol():
    with pytest.raises(UnboundSymbol):
        evaluate(X1 + X2, {"x1": 1.0})


def test_equivalent_on_samples_examples():
    box = {"x3": (0.5, 2.0)}
    assert equivalent_on_samples(differentiate(-log(X3), "x3"), -power(X3, -1), box)[0]
    zbox = {"x1": (0.5, 2.0), "x2": (0.5, 2.0)}
    assert equivalent_on_samples(log(Z_ABS * Z_ABS), log(Z_ABS) * 2, zbox)[0]
    ok, witness = equivalent_on_samples(power(X3, -1), power(X3, -1) + 1e-3, box, tol=1e-6)
    assert not ok
    point, a, b = witness
    assert abs(a - b) == pytest.approx(1e-3)
    assert set(point) == {"x3"}


def test_exact_evaluation_is_rational():
    e = X1 * X1 * GaussQ(1, 2) + X2
    assert evaluate_exact(e, {"x1": 2, "x2": 3}) == GaussQ(7, 8)


def test_sqrt_and_exp_log():
    e = exp(log(X3) * 2)
    ok, _ = equivalent_on_samples(e, X3 * X3, {"x3": (0.5, 2.0)})
    assert ok
    assert evaluate(sqrt(X3), {"x3": 4.0}) == pytest.approx(2.0)


small = st.integers(-5, 5)
coords = st.sampled_from([X0, X1, X2, X3])


@st.composite
def polys(draw):
    e = Expr()
    for _ in range(draw(st.integers(1, 4))):
        a, b = draw(coords), draw(coords)
        e = e + a * b * draw(small) + a * draw(small)
    return e


@given(polys(), polys(), small)
@settings(max_examples=40, deadline=None)
def test_differentiation_is_linear(f, g, c):
    lhs = differentiate(f * c + g, "x1")
    rhs = differentiate(f, "x1") * c + differentiate(g, "x1")
    assert (lhs - rhs).is_zero()


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_mixed_partials_commute(f, g):
    h = f * g + log(X3) * f
    assert (differentiate(differentiate(h, "x1"), "x3") - differentiate(differentiate(h, "x3"), "x1")).is_zero()


@given(polys())
@settings(max_examples=30, deadline=None)
def test_canonicalize_idempotent(f):
    e = f * log(X3) + exp(f) * X2
    once = canonicalize(e)
    assert canonicalize(once) == once


def test_derivative_matches_finite_difference():
    e = exp(X1 * X3) * log(X3) + power(X1 * X1 + X3, Expr() + 0.5)
    d = differentiate(e, "x3")
    rng = np.random.default_rng(1)
    for _ in range(10):
        x1, x3 = rng.uniform(0.5, 2.0, size=2)
        h = 1e-6
        fd = (evaluate(e, {"x1": x1, "x3": x3 + h}) - evaluate(e, {"x1": x1, "x3": x3 - h})) / (2 * h)
        assert evaluate(d, {"x1": x1, "x3": x3}) == pytest.approx(fd, rel=1e-6)
    assert math.isfinite(evaluate(d, {"x1": 1.0, "x3": 1.0}).real)
