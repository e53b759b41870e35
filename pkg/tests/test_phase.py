from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moyalkw import InvalidBinding, PhasePoly, chi, moyal_bracket, poisson_bracket, star, substitute_params
from moyalkw.expr import HBAR, _coerce, evaluate_exact, power
from moyalkw.numbers import GaussQ
from moyalkw.phase import random_phase_poly

P = PhasePoly({(1, 0): 1})
Q = PhasePoly({(0, 1): 1})
I = GaussQ(0, 1)
HALF_IH = HBAR * _coerce(GaussQ(0, Fraction(1, 2)))


def test_q_star_p():
    assert star(Q, P) == Q * P + PhasePoly.scalar(HALF_IH)


def test_p_star_q():
    assert star(P, Q) == P * Q - PhasePoly.scalar(HALF_IH)


def test_unit_is_neutral():
    f = PhasePoly({(2, 1): 3, (0, 3): Fraction(1, 2)})
    one = PhasePoly.scalar(1)
    assert star(f, one) == f and star(one, f) == f


def test_brackets_of_canonical_pair():
    assert moyal_bracket(Q, P) == PhasePoly.scalar(1)
    assert poisson_bracket(Q, P) == PhasePoly.scalar(1)


def test_poisson_of_squares():
    assert poisson_bracket(Q * Q, P * P) == Q * P * 4


def test_cubic_difference_is_order_hbar_squared():
    q3, p3 = Q * Q * Q, P * P * P
    d = moyal_bracket(q3, p3) - poisson_bracket(q3, p3)
    assert not d.is_zero()
    # (i hbar/2)^3 / 3! * 2 * 36 / (i hbar) = -(3/2) hbar^2
    assert d == PhasePoly.scalar(HBAR * HBAR * Fraction(-3, 2))


def test_chi3_at_half():
    assert chi(3, beta=Fraction(1, 2)) == P * Q * power(HBAR, -1)


def test_chi3_value():
    c = chi(3, hbar=1, beta=1).to_expr()
    assert evaluate_exact(c, {"p": 1, "q": 1}) == GaussQ(1, Fraction(-1, 2))


def test_chi_brackets_cyclic():
    inv_ih = power(HBAR, -1) * _coerce(GaussQ(0, -1))
    c = {i: chi(i) for i in (1, 2, 3)}
    assert moyal_bracket(c[1], c[2]) + c[3] * inv_ih == PhasePoly()
    assert moyal_bracket(c[2], c[3]) + c[1] * inv_ih == PhasePoly()
    assert moyal_bracket(c[3], c[1]) + c[2] * inv_ih == PhasePoly()
    for i in (1, 2, 3):
        assert moyal_bracket(c[i], c[i]).is_zero()


def test_substitute_params():
    got = substitute_params(chi(3), {"hbar": 1})
    expected = chi(3, hbar=1)
    assert got == expected
    assert substitute_params(chi(3), {}) == chi(3)
    with pytest.raises(InvalidBinding):
        substitute_params(chi(3), {"p": 1})


def test_rejects_phase_symbols_in_coefficients():
    from moyalkw.expr import P as PSYM

    with pytest.raises(ValueError):
        PhasePoly({(0, 0): PSYM})


@st.composite
def phase_polys(draw, degree=3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_phase_poly(np.random.default_rng(seed), degree=degree, terms=3)


@given(phase_polys(), phase_polys(), phase_polys())
@settings(max_examples=25, deadline=None)
def test_star_associative(f, g, h):
    assert star(star(f, g), h) == star(f, star(g, h))


@given(phase_polys(), phase_polys())
@settings(max_examples=25, deadline=None)
def test_bracket_antisymmetric(f, g):
    assert (moyal_bracket(f, g) + moyal_bracket(g, f)).is_zero()


@given(phase_polys(), phase_polys(), phase_polys())
@settings(max_examples=15, deadline=None)
def test_jacobi(f, g, h):
    j = moyal_bracket(f, moyal_bracket(g, h)) + moyal_bracket(g, moyal_bracket(h, f)) + moyal_bracket(h, moyal_bracket(f, g))
    assert j.is_zero()


@given(phase_polys(degree=2), phase_polys())
@settings(max_examples=25, deadline=None)
def test_brackets_agree_below_cubic_order(f, g):
    assert moyal_bracket(f, g) == poisson_bracket(f, g)


@given(phase_polys(), phase_polys())
@settings(max_examples=25, deadline=None)
def test_classical_limit(f, g):
    # the difference carries hbar^2 or higher, so d / hbar still vanishes at hbar = 0
    d = (moyal_bracket(f, g) - poisson_bracket(f, g)) * power(HBAR, -1)
    assert substitute_params(d, {"hbar": 0}).is_zero()
