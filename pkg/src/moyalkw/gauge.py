"""Curvatures, covariant derivatives and residual operators for classical
(scalar or 2x2 matrix) and Moyal-deformed (phase-polynomial) gauge data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .algebra import MATRIX, MOYAL, SCALAR, AlgebraMismatch, MatrixField, leaves
from .expr import COORD_NAMES, Expr, _coerce, evaluate, power
from .forms import (
    DIM,
    Coframe,
    Form,
    _wedge_with,
    exterior_derivative,
    hodge,
    moyal_wedge,
    sd_asd_project,
    wedge,
)
from .numbers import GaussQ
from .phase import PhasePoly, moyal_bracket, star

__all__ = [
    "GaugePair",
    "ParameterError",
    "EquationResidual",
    "ResidualReport",
    "graded_bracket",
    "curvature",
    "moyal_curvature",
    "cov_deriv",
    "cov_codiff",
    "moyal_cov_deriv",
    "moyal_cov_codiff",
    "kw_residuals",
    "nonabelian_sw_residuals",
    "deformed_kw_residuals",
    "deformed_sw_residuals",
    "VARIANTS",
    "witten_operator_check",
    "lagrangian_density",
    "residual_stats",
    "build_report",
]


class ParameterError(ValueError):
    pass


@dataclass
class GaugePair:
    """Connection A and Higgs field phi sharing one coefficient algebra."""

    A: Form
    phi: Form
    frame: Coframe | None = None
    t: Expr | None = None

    def __post_init__(self):
        if self.A.degree != 1 or self.phi.degree != 1:
            raise ValueError("A and phi must be 1-forms")
        if self.A.comps and self.phi.comps and self.A.algebra != self.phi.algebra:
            raise AlgebraMismatch("A and phi carry different algebras")
        # an empty form adopts the algebra of its partner
        if not self.A.comps:
            self.A = Form.zero(1, self.phi.algebra)
        if not self.phi.comps:
            self.phi = Form.zero(1, self.A.algebra)

    @property
    def algebra(self):
        return self.A.algebra if self.A.comps else self.phi.algebra

    @property
    def flat(self):
        return self.frame is None or self.frame.flat

    def is_antihermitian_at(self, point, tol=1e-12):
        if self.algebra != MATRIX:
            return True
        return all(
            c.is_antihermitian_at(point, tol)
            for c in list(self.A.comps.values()) + list(self.phi.comps.values())
        )


def _require_classical(gp):
    if gp.algebra == MOYAL:
        raise AlgebraMismatch("phase-space data: use the moyal_* operations")


def _require_moyal(gp):
    if gp.algebra != MOYAL:
        if gp.A.comps or gp.phi.comps:
            raise AlgebraMismatch("moyal_* operations need phase-space coefficients")


def _lie_bracket(alg):
    return alg.bracket


# ---------------------------------------------------------------------------
# generic building blocks
# ---------------------------------------------------------------------------


def graded_bracket(A, omega, bracket):
    """[A ^ omega] for a 1-form A: components sum bracket(A_mu, omega_I)."""
    alg = A.algebra if A.comps else omega.algebra
    return _wedge_with(A, omega, bracket, alg)


def _cov_ext(A, omega, bracket):
    return exterior_derivative(omega) + graded_bracket(A, omega, bracket)


def _curv(A, sign, bracket):
    # (1/2)[A ^ A]_{mu nu} = bracket(A_mu, A_nu)
    half = graded_bracket(A, A, bracket) * Fraction(1, 2)
    dA = exterior_derivative(A)
    return dA + half if sign > 0 else dA - half


def _codiff(gp, bracket, route):
    phi, A = gp.phi, gp.A
    if route == "auto":
        route = "flat" if gp.flat else "hodge"
    if route == "flat":
        if not gp.flat:
            raise ValueError("flat divergence route on a curved frame")
        total = None
        for mu in range(DIM):
            c = phi[(mu,)].diff(COORD_NAMES[mu]) + bracket(A[(mu,)], phi[(mu,)])
            total = c if total is None else total + c
        return Form(0, {(): total}, phi.algebra if phi.comps else gp.algebra)
    star_phi = hodge(phi, gp.frame)
    return hodge(_cov_ext(A, star_phi, bracket), gp.frame)


# ---------------------------------------------------------------------------
# classical
# ---------------------------------------------------------------------------


def curvature(gp):
    """F = dA + A ^ A, F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu]."""
    _require_classical(gp)
    return _curv(gp.A, +1, _lie_bracket(gp.algebra))


def cov_deriv(gp, omega=None):
    """D omega = d omega + [A ^ omega]; omega defaults to phi."""
    _require_classical(gp)
    return _cov_ext(gp.A, gp.phi if omega is None else omega, _lie_bracket(gp.algebra))


def cov_codiff(gp, route="auto"):
    """D*phi = *D*phi; on flat patches the fast path sum_mu D_mu phi_mu."""
    _require_classical(gp)
    return _codiff(gp, _lie_bracket(gp.algebra), route)


def _t_factors(t):
    t = _coerce(t)
    if t is None:
        raise ParameterError("t is required")
    if t.is_zero():
        raise ParameterError("t = 0 is outside the family")
    return t, power(t, -1)


def kw_residuals(gp, t=None):
    """((F - phi^phi + t D phi)+, (F - phi^phi - t^-1 D phi)-, D*phi)."""
    _require_classical(gp)
    t, tinv = _t_factors(gp.t if t is None else t)
    X = curvature(gp) - wedge(gp.phi, gp.phi)
    Dphi = cov_deriv(gp)
    plus, _ = sd_asd_project(X + Dphi * t, gp.frame)
    _, minus = sd_asd_project(X - Dphi * tinv, gp.frame)
    return plus, minus, cov_codiff(gp)


def nonabelian_sw_residuals(gp):
    """((F - phi^phi)+, (D phi)-, D*phi)."""
    _require_classical(gp)
    plus, _ = sd_asd_project(curvature(gp) - wedge(gp.phi, gp.phi), gp.frame)
    _, minus = sd_asd_project(cov_deriv(gp), gp.frame)
    return plus, minus, cov_codiff(gp)


# ---------------------------------------------------------------------------
# Moyal-deformed
# ---------------------------------------------------------------------------


VARIANTS = ("literal", "weyl")


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def moyal_curvature(gp, variant="literal"):
    """F_{mu nu} = d_mu A_nu - d_nu A_mu - {A_mu, A_nu}_M.

    ``variant="weyl"`` uses + {A_mu, A_nu}_M, the sign obtained by
    transporting F = dA + A^A through the Weyl map with A -> i hbar A.
    """
    _require_moyal(gp)
    _check_variant(variant)
    return _curv(gp.A, -1 if variant == "literal" else +1, moyal_bracket)


def moyal_cov_deriv(gp, omega=None):
    """D_M omega = d omega + {A ^ omega}_M."""
    _require_moyal(gp)
    return _cov_ext(gp.A, gp.phi if omega is None else omega, moyal_bracket)


def moyal_cov_codiff(gp, route="auto"):
    _require_moyal(gp)
    return _codiff(gp, moyal_bracket, route)


def _phi_square(phi, variant):
    if not phi.comps:
        return Form.zero(2, MOYAL)
    if variant == "literal":
        return moyal_wedge(phi, phi)
    # (1/2){Phi ^ Phi}_M, components {Phi_mu, Phi_nu}_M
    return graded_bracket(phi, phi, moyal_bracket) * Fraction(1, 2)


def deformed_kw_residuals(gp, t=None, variant="literal"):
    """Deformed family with star-product wedge and Moyal covariant derivative.

    ``variant="weyl"`` replaces the curvature sign and the quadratic Higgs
    term Phi ^* Phi by (1/2){Phi ^ Phi}_M, the forms obtained from the
    operator equations under the Weyl map.
    """
    _require_moyal(gp)
    _check_variant(variant)
    t, tinv = _t_factors(gp.t if t is None else t)
    X = moyal_curvature(gp, variant) - _phi_square(gp.phi, variant)
    Dphi = moyal_cov_deriv(gp)
    plus, _ = sd_asd_project(X + Dphi * t, gp.frame)
    _, minus = sd_asd_project(X - Dphi * tinv, gp.frame)
    return plus, minus, moyal_cov_codiff(gp)


def deformed_sw_residuals(gp, variant="literal"):
    _require_moyal(gp)
    _check_variant(variant)
    X = moyal_curvature(gp, variant) - _phi_square(gp.phi, variant)
    plus, _ = sd_asd_project(X, gp.frame)
    _, minus = sd_asd_project(moyal_cov_deriv(gp), gp.frame)
    return plus, minus, moyal_cov_codiff(gp)


# ---------------------------------------------------------------------------
# operator form of the reduced equations
# ---------------------------------------------------------------------------


_I = _coerce(GaussQ(0, 1))


def _dbar(c):
    return c.diff("x1") + c.diff("x2") * _I


def _algebra_for(values):
    for v in values:
        if isinstance(v, MatrixField):
            return MATRIX
        if isinstance(v, PhasePoly):
            return MOYAL
    raise AlgebraMismatch("composite fields must be matrix or phase-space valued")


def _default_probes(alg):
    from .algebra import su2_generator
    from .phase import chi

    if alg == MATRIX:
        return [su2_generator(a) for a in (1, 2, 3)]
    return [chi(a) for a in (1, 2, 3)]


_PAIRS = ((1, 2), (1, 3), (2, 3))


def witten_operator_check(a1, a2, a3, method="probe", probes=None):
    """Pairwise conditions [D_i, D_j] = 0 for D_1 = dbar + a1, D_2 = d_3 + a2,
    D_3 = a3 (dbar = d_1 + i d_2), each acting by the algebra bracket.

    ``method="component"`` returns the three component expressions
    dbar a2 - d3 a1 + [a1,a2], dbar a3 + [a1,a3], d3 a3 + [a2,a3].
    ``method="probe"`` applies the commutator of the operators to constant
    probes X and returns [D_i,D_j] X for every probe.
    Returns a list of (label, coefficient).
    """
    alg = _algebra_for((a1, a2, a3))
    for v in (a1, a2, a3):
        if not alg.accepts(v):
            raise AlgebraMismatch("composite fields carry different algebras")
    br = alg.bracket
    a = {1: a1, 2: a2, 3: a3}
    deriv = {1: _dbar, 2: lambda c: c.diff("x3"), 3: None}

    def op(k, y):
        out = br(a[k], y)
        if deriv[k] is not None:
            out = out + deriv[k](y)
        return out

    if method == "component":
        out = []
        for i, j in _PAIRS:
            c = br(a[i], a[j])
            if deriv[i] is not None:
                c = c + deriv[i](a[j])
            if deriv[j] is not None:
                c = c - deriv[j](a[i])
            out.append((f"[D{i},D{j}]", c))
        return out
    if method != "probe":
        raise ValueError(f"unknown method {method!r}")
    probes = probes if probes is not None else _default_probes(alg)
    out = []
    for i, j in _PAIRS:
        for n, X in enumerate(probes, 1):
            out.append((f"[D{i},D{j}]X{n}", op(i, op(j, X)) - op(j, op(i, X))))
    return out


# ---------------------------------------------------------------------------
# Lagrangian densities
# ---------------------------------------------------------------------------


def _eval_coeff(c, at):
    """Numeric value of a coefficient at one point: complex, 2x2 array, or a
    dict {(m, n): complex} of phase-polynomial coefficients."""
    if isinstance(c, Expr):
        return complex(np.asarray(evaluate(c, at)).reshape(()))
    if isinstance(c, MatrixField):
        return np.array([[complex(np.asarray(evaluate(c[i, j], at)).reshape(())) for j in (0, 1)] for i in (0, 1)])
    return {mn: complex(np.asarray(evaluate(v, at)).reshape(())) for mn, v in c.coeffs.items()}


def _full_components(form):
    """All ordered (mu, nu) components of a 2-form (antisymmetric)."""
    out = {}
    for (m, n), c in form.comps.items():
        out[(m, n)] = c
        out[(n, m)] = -c
    return out


def _covariant_partials(A, phi, bracket):
    """D_mu phi_nu = d_mu phi_nu + bracket(A_mu, phi_nu) for all mu, nu."""
    out = {}
    for mu in range(DIM):
        for nu in range(DIM):
            c = phi[(nu,)].diff(COORD_NAMES[mu]) + bracket(A[(mu,)], phi[(nu,)])
            if not c.is_zero():
                out[(mu, nu)] = c
    return out


def _classical_density(gp, at, ricci):
    alg = gp.algebra
    F = curvature(gp)
    br = alg.bracket
    mul = alg.mul
    tr = (lambda m: m.trace()) if alg == MATRIX else (lambda e: e)

    total = Expr()
    for (m, n), c in _full_components(F).items():
        total = total + tr(mul(c, c)) * Fraction(1, 2)
    for c in _covariant_partials(gp.A, gp.phi, br).values():
        total = total + tr(mul(c, c))
    if ricci is not None:
        for mu in range(DIM):
            for nu in range(DIM):
                r = ricci[mu][nu]
                if not r.is_zero():
                    total = total + tr(mul(gp.phi[(mu,)], gp.phi[(nu,)])) * r
    for mu in range(DIM):
        for nu in range(DIM):
            k = br(gp.phi[(mu,)], gp.phi[(nu,)])
            if not k.is_zero():
                total = total + tr(mul(k, k)) * Fraction(1, 2)
    FF = wedge(F, F) if F.comps else Form.zero(4, alg)
    top = tr(FF[(0, 1, 2, 3)]) if FF.comps else Expr()
    ymh = -complex(np.asarray(evaluate(total, at)).reshape(()))
    tv = complex(np.asarray(evaluate(top, at)).reshape(())) if not top.is_zero() else 0j
    return ymh, tv


def _poly_grid(coeffs, P, Q):
    out = np.zeros_like(P, dtype=complex)
    for (m, n), v in coeffs.items():
        out = out + v * P ** m * Q ** n
    return out


def _deformed_density(gp, at, pq_box, grid, ricci):
    F = moyal_curvature(gp)
    total = PhasePoly()
    for (m, n), c in _full_components(F).items():
        total = total + star(c, c) * Fraction(1, 2)
    for c in _covariant_partials(gp.A, gp.phi, moyal_bracket).values():
        total = total + star(c, c)
    if ricci is not None:
        for mu in range(DIM):
            for nu in range(DIM):
                r = ricci[mu][nu]
                if not r.is_zero():
                    total = total + star(gp.phi[(mu,)], gp.phi[(nu,)]) * r
    for mu in range(DIM):
        for nu in range(DIM):
            k = moyal_bracket(gp.phi[(mu,)], gp.phi[(nu,)])
            if not k.is_zero():
                total = total + star(k, k) * Fraction(1, 2)
    FF = moyal_wedge(F, F) if F.comps else Form.zero(4, MOYAL)
    top = FF[(0, 1, 2, 3)] if FF.comps else PhasePoly()

    (p0, p1), (q0, q1) = pq_box
    n = grid
    pc = p0 + (np.arange(n) + 0.5) * (p1 - p0) / n
    qc = q0 + (np.arange(n) + 0.5) * (q1 - q0) / n
    P, Q = np.meshgrid(pc, qc, indexing="ij")
    # midpoint rule, normalised per unit phase-space area
    ymh = -_poly_grid(_eval_coeff(total, at), P, Q).mean()
    tv = _poly_grid(_eval_coeff(top, at), P, Q).mean()
    return complex(ymh), complex(tv)


def lagrangian_density(gp, at, pq_box=((-1.0, 1.0), (-1.0, 1.0)), grid=16, ricci=None):
    """(Yang-Mills-Higgs density, Tr F^F density) at one point of a flat patch.

    YMH = -Tr[F_mn F^mn / 2 + D_m phi_n D^m phi^n + R_mn phi^m phi^n
    + [phi_m, phi_n][phi^m, phi^n] / 2] with all index pairs summed. For
    phase-space data the trace is the mean over a midpoint grid on
    ``pq_box`` of the star-product density (products become star products,
    commutators become Moyal brackets); overall constant prefactors of the
    phase-space measure are dropped.
    """
    if not gp.flat:
        raise NotImplementedError("densities are implemented on flat patches")
    if gp.algebra == MOYAL:
        return _deformed_density(gp, at, pq_box, grid, ricci)
    return _classical_density(gp, at, ricci)


# ---------------------------------------------------------------------------
# residual statistics and reports
# ---------------------------------------------------------------------------


@dataclass
class EquationResidual:
    name: str
    components: int
    max_abs_residual: float
    mean_abs_residual: float
    samples: int
    exact: bool

    def as_dict(self):
        return {
            "name": self.name,
            "components": self.components,
            "max_abs_residual": self.max_abs_residual,
            "mean_abs_residual": self.mean_abs_residual,
            "samples": self.samples,
            "exact": self.exact,
        }


@dataclass
class ResidualReport:
    case: str
    parameters: dict
    seed: int
    tolerance: float
    equations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(e.max_abs_residual <= self.tolerance for e in self.equations)

    def as_dict(self, version):
        return {
            "case": self.case,
            "parameters": dict(self.parameters),
            "seed": self.seed,
            "tolerance": self.tolerance,
            "equations": [e.as_dict() for e in self.equations],
            "notes": dict(self.notes),
            "pass": self.passed,
            "version": version,
        }


def _scalar_leaves(residual):
    if isinstance(residual, Form):
        return residual.leaves(), comb(DIM, residual.degree)
    if isinstance(residual, (list, tuple)):
        out, n = [], 0
        for r in residual:
            lv, k = _scalar_leaves(r)
            out.extend(lv)
            n += k
        return out, n
    if isinstance(residual, (Expr, MatrixField, PhasePoly)):
        return leaves(residual), 1
    return [_coerce(residual)], 1


def residual_stats(name, residual, points, n_points):
    """Max and mean over points of the largest |scalar leaf| of ``residual``.

    Leaves are the Expr entries of every component (matrix entries or
    p^m q^n coefficients), so a zero statistic means the residual vanishes
    as a polynomial in p, q as well as pointwise in x.
    """
    lv, ncomp = _scalar_leaves(residual)
    lv = [x for x in lv if not x.is_zero()]
    if not lv:
        return EquationResidual(name, ncomp, 0.0, 0.0, n_points, True)
    per_point = np.zeros(n_points)
    for e in lv:
        v = np.abs(np.broadcast_to(np.asarray(evaluate(e, points)), (n_points,)))
        per_point = np.maximum(per_point, v)
    return EquationResidual(
        name, ncomp, float(per_point.max()), float(per_point.mean()), n_points, False
    )


def build_report(case, parameters, seed, tolerance, named_residuals, points, n_points, notes=None):
    rep = ResidualReport(case, parameters, seed, tolerance, notes=dict(notes or {}))
    for name, res in named_residuals:
        rep.equations.append(residual_stats(name, res, points, n_points))
    return rep
