from fractions import Fraction

import numpy as np
import pytest

from moyalkw import Form, chi, moyal_bracket, sample_points
from moyalkw.algebra import su2_generator
from moyalkw.expr import HBAR, X0, X1, X2, X3, equivalent_on_samples, evaluate, exp, log, modulus, power, sqrt
from moyalkw.forms import exterior_derivative
from moyalkw.numbers import GaussQ
from moyalkw.solutions import (
    dh_ansatz,
    dh_curved,
    dh_flat,
    dh_flat_deformed,
    eq1_residual,
    monopole_residual,
    pde_residual,
    sigma_coframe,
    witten_classical,
    witten_deformed,
    witten_v,
)

from support import max_residual

BOX = {c: (0.5, 2.0) for c in ("x0", "x1", "x2", "x3")}
ZBOX = {c: (0.5, 2.0) for c in ("x1", "x2", "x3")}
I = GaussQ(0, 1)


def test_exponential_of_v():
    v = witten_v(1)
    z2 = X1 * X1 + X2 * X2
    ok, w = equivalent_on_samples(exp(v * 2), power(z2, -1) * power(X3, -2), ZBOX)
    assert ok, w


def test_pde_at_unit_point():
    case = witten_classical(1)
    assert pde_residual(case, {"x1": 1.0, "x2": 1.0, "x3": 1.0}) == pytest.approx(0.0, abs=1e-14)


def test_r_zero_has_no_planar_connection():
    case = witten_classical(0)
    assert (case.composites["v"] + log(X3)).is_zero()
    assert case.composites["a1"].is_zero()


def test_classical_field_strength_display():
    case = witten_classical(2)
    assert dict(case.checks["display"])["F12-display"].is_zero()


def test_classical_fields_antihermitian():
    pts = sample_points(ZBOX, 5, seed=1)
    for i in range(5):
        at = {k: v[i] for k, v in pts.items()}
        assert witten_classical(1).pair.is_antihermitian_at(at)


def test_deformed_split_and_field_strength():
    case = witten_deformed(1)
    checks = dict(case.checks["display"])
    assert checks["a1-split"].is_zero()
    assert checks["F12-display"].is_zero()


def test_raising_combination_is_eigen_under_chi3():
    c1, c2, c3 = chi(1), chi(2), chi(3)
    w = c2 - c1 * I
    # {chi2, chi3}_M = i chi1/hbar and {chi1, chi3}_M = -i chi2/hbar
    assert moyal_bracket(w, c3) == w * -power(HBAR, -1)


def test_witten_box_guards():
    case = witten_classical(1)
    assert case.box_problems({"x1": (-1, 1), "x2": (-1, 1), "x3": (0.5, 2)})
    assert case.box_problems({"x1": (0.5, 1), "x2": (0.5, 1), "x3": (-1, 2)})
    assert not case.box_problems({"x1": (0.5, 1), "x2": (0.5, 1), "x3": (0.5, 2)})


def test_dh_ansatz_flat_display():
    G = log(modulus(X3)) * Fraction(-1, 2)
    pair = dh_ansatz(G, G)
    t = [su2_generator(a) for a in (1, 2, 3)]
    d3G = G.diff("x3")
    expected = Form(1, {(0,): t[2] * (-d3G), (1,): t[1] * d3G, (2,): t[0] * (-d3G)})
    assert pair.A == expected


def test_constant_potential_gives_zero_connection():
    assert dh_ansatz(X0 * 0 + 3, X0 * 0 + 1).A.is_zero()


def test_flat_eq1_cancels():
    G = log(modulus(X3)) * Fraction(-1, 2)
    H = log(modulus(X3)) * (sqrt(3) * Fraction(1, 2))
    assert eq1_residual(G, H).is_zero()
    assert (G.diff("x3") + power(X3, -1) * Fraction(1, 2)).is_zero()


def test_flat_classical_residuals_at_unit_point():
    at = {c: 1.0 for c in ("x0", "x1", "x2", "x3")}
    for name, res in dh_flat().checks["classical"]:
        lv = res.leaves() if hasattr(res, "leaves") else [res]
        assert all(abs(evaluate(x, at)) <= 1e-10 for x in lv), name


def test_flat_classical_oracle_expansion():
    # independent expansion: A = -t3 g dx0 + t2 g dx1 - t1 g dx2 with g = -1/(2 x3)
    pair = dh_flat().pair
    t = [su2_generator(a) for a in (1, 2, 3)]
    g = power(X3, -1) * Fraction(-1, 2)
    assert pair.A == Form(1, {(0,): t[2] * (-g), (1,): t[1] * g, (2,): t[0] * (-g)})
    h = power(X3, -1) * (sqrt(3) * Fraction(1, 2))
    assert pair.phi == Form(1, {(0,): t[2] * (-h), (1,): t[1] * h, (2,): t[0] * (-h)})


def test_flat_deformed_tracks_all_conventions():
    case = dh_flat_deformed()
    assert set(case.checks) == {f"{p}/{n}" for p in ("display", "operator") for n in ("unit", "ihbar", "-ihbar")}
    assert len(case.info) == 2 * len(case.checks)


def test_flat_deformed_literal_system_residuals():
    """The star-wedge Higgs square and the minus-sign curvature leave a
    nonzero self-dual residual under every convention; the remaining two
    equations vanish under the -i hbar normalization."""
    pts = sample_points(BOX, 20, seed=0)
    pts = {**pts, "hbar": np.full(20, 0.5), "beta": np.full(20, 0.5)}
    checks = dict(dh_flat_deformed().checks["display/-ihbar"])
    assert max_residual(checks["(F-Phi^*Phi)+"], pts) > 0.1
    assert max_residual(checks["(D_M Phi)-"], pts) <= 1e-10
    assert max_residual(checks["D_M*Phi"], pts) <= 1e-10


def test_monopole_default_data():
    assert monopole_residual().is_zero()
    assert not monopole_residual(V=X3 * X3).is_zero()


def test_sigma_forms_closed_log():
    e = sigma_coframe().forms()
    assert exterior_derivative(e[3]).is_zero()


def test_curved_case_relations():
    case = dh_curved()
    A, Phi = case.pair.A, case.pair.phi
    assert Phi == A * (-sqrt(21) * Fraction(1, 3))
    pts = sample_points(BOX, 20, seed=0)
    pts = {**pts, "hbar": np.full(20, 0.5), "beta": np.full(20, 0.5)}
    diag = dict((n, r) for n, r in case.info)
    assert max_residual(diag["ansatz-vs-display A"], pts) <= 1e-12
    assert max_residual(diag["ansatz-vs-display Phi"], pts) <= 1e-12
    assert max_residual(dict(case.checks["ihbar"])["F-display"], pts) <= 1e-10
    assert max_residual(dict(case.checks["unit"])["F-display"], pts) > 1e-3


def test_curved_eq1_on_gibbons_hawking_metric():
    case = dh_curved()
    pts = sample_points(BOX, 20, seed=0)
    assert max_residual(case.pde, pts) <= 1e-10


def test_pde_residual_requires_equation():
    case = dh_flat_deformed()
    case.pde = None
    with pytest.raises(ValueError):
        pde_residual(case, {})
