"""Hitchin's equations on a flat 2D patch (coordinates x1, x2), in their
complex and real presentations, with the identities relating them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import MATRIX, MatrixField
from .expr import X1, X2, Expr, _coerce, sample_points
from .forms import Form, wedge
from .gauge import GaugePair, build_report, cov_codiff, cov_deriv, curvature
from .numbers import GaussQ

__all__ = [
    "HitchinData",
    "dz",
    "dzbar",
    "hitchin_residuals_complex",
    "hitchin_residuals_real",
    "dbar_coefficient",
    "identity_terms",
    "equivalence_check",
    "random_hitchin_data",
]

_I = _coerce(GaussQ(0, 1))
_HALF = Fraction(1, 2)


def dz():
    return Form(1, {(1,): 1, (2,): _I})


def dzbar():
    return Form(1, {(1,): 1, (2,): -_I})


@dataclass
class HitchinData:
    """Connection A = A1 dx1 + A2 dx2 and Higgs components phi1, phi2."""

    A1: MatrixField
    A2: MatrixField
    phi1: MatrixField
    phi2: MatrixField

    @property
    def A(self):
        return Form(1, {(1,): self.A1, (2,): self.A2}, MATRIX)

    @property
    def Phi(self):
        """Phi = phi1 dx1 + phi2 dx2."""
        return Form(1, {(1,): self.phi1, (2,): self.phi2}, MATRIX)

    @property
    def c(self):
        """dz coefficient of Phi_c = (phi1 - i phi2)/2."""
        return (self.phi1 - self.phi2 * _I) * _HALF

    @property
    def c_star(self):
        """dzbar coefficient of Phi_c* = -(phi1 + i phi2)/2."""
        return (self.phi1 + self.phi2 * _I) * (-_HALF)

    @property
    def Phi_c(self):
        return dz().tensor(self.c)

    @property
    def Phi_c_star(self):
        return dzbar().tensor(self.c_star)

    def pair(self):
        return GaugePair(self.A, self.Phi)

    def is_antihermitian_at(self, point, tol=1e-12):
        return self.phi1.is_antihermitian_at(point, tol) and self.phi2.is_antihermitian_at(point, tol)


def _graded_commutator(a, b):
    # [a, b] for matrix 1-forms: a^b + b^a
    return wedge(a, b) + wedge(b, a)


def _cov(d, j, m):
    """D_j m = d_j m + [A_j, m]."""
    Aj = d.A1 if j == 1 else d.A2
    return m.diff(f"x{j}") + (Aj @ m - m @ Aj)


def dbar_coefficient(d):
    """(D1 + i D2) applied to the dz coefficient of Phi_c."""
    return _cov(d, 1, d.c) + _cov(d, 2, d.c) * _I


def hitchin_residuals_complex(d):
    """(F + [Phi_c, Phi_c*], D_A Phi_c).

    D_A Phi_c = i (D1 + i D2)c dx1^dx2 is the dbar_A part of the covariant
    derivative of the (1,0)-form Phi_c; it reduces to d Phi_c when A = 0.
    """
    F = curvature(GaugePair(d.A, Form.zero(1, MATRIX)))
    first = F + _graded_commutator(d.Phi_c, d.Phi_c_star)
    second = Form(2, {(1, 2): dbar_coefficient(d) * _I}, MATRIX)
    return first, second


def hitchin_residuals_real(d):
    """(F - Phi^Phi, D Phi, D*Phi) on the flat plane."""
    gp = d.pair()
    return curvature(gp) - wedge(d.Phi, d.Phi), cov_deriv(gp), cov_codiff(gp, route="flat")


def identity_terms(d):
    """Both identities as residuals that vanish for arbitrary data.

    (i)  [Phi_c, Phi_c*] + Phi^Phi
    (ii) 2 (D1 + i D2)c - (D*Phi - i (D Phi)_12), whose real and imaginary
         parts are D1 phi1 + D2 phi2 and D2 phi1 - D1 phi2.
    """
    ident_i = _graded_commutator(d.Phi_c, d.Phi_c_star) + wedge(d.Phi, d.Phi)
    _, DPhi, DsPhi = hitchin_residuals_real(d)
    ident_ii = dbar_coefficient(d) * 2 - (DsPhi[()] - DPhi[(1, 2)] * _I)
    return ident_i, ident_ii


def equivalence_check(d, domain=None, n=32, tol=1e-10, seed=0, name="hitchin-equivalence"):
    """Sampled report that both identities hold for ``d``."""
    domain = domain or {"x1": (-1.0, 1.0), "x2": (-1.0, 1.0)}
    pts = sample_points(domain, n, seed)
    ident_i, ident_ii = identity_terms(d)
    return build_report(
        name,
        {},
        seed,
        tol,
        [("[Phi_c,Phi_c*] + Phi^Phi", ident_i), ("2 dbar_A c - (D*Phi - i DPhi)", ident_ii)],
        pts,
        n,
    )


def _random_poly(rng, degree, scale=4):
    out = Expr()
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            re = Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, scale + 1)))
            im = Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, scale + 1)))
            if re or im:
                out = out + X1 ** i * X2 ** j * _coerce(GaussQ(re, im))
    return out


def _random_matrix(rng, degree, antihermitian):
    m = MatrixField([[_random_poly(rng, degree) for _ in range(2)] for _ in range(2)])
    return (m - m.adjoint()) * _HALF if antihermitian else m


def random_hitchin_data(seed, degree=2, antihermitian=True):
    """Seeded random polynomial data with exact Gaussian-rational coefficients."""
    rng = np.random.default_rng(seed)
    mats = [_random_matrix(rng, degree, antihermitian) for _ in range(4)]
    return HitchinData(*mats)
