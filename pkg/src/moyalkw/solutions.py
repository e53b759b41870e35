"""Closed-form classical and deformed solutions, as ready-to-check cases."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MATRIX, MOYAL, RAISE, SIGMA3, MatrixField, su2_generator
from .expr import (
    BETA,
    COORD_NAMES,
    HBAR,
    RR,
    X0,
    X1,
    X2,
    X3,
    Expr,
    _coerce,
    evaluate,
    exp,
    log,
    modulus,
    power,
    sqrt,
)
from .forms import (
    Coframe,
    Form,
    exterior_derivative,
    hodge,
    psi_plus,
    structure_constants,
    to_frame,
    wedge,
)
from .gauge import (
    GaugePair,
    curvature,
    deformed_sw_residuals,
    moyal_curvature,
    nonabelian_sw_residuals,
    witten_operator_check,
)
from .numbers import GaussQ
from .phase import PhasePoly, chi

import numpy as np

__all__ = [
    "SolutionCase",
    "witten_v",
    "witten_classical",
    "witten_deformed",
    "dh_ansatz",
    "dh_flat",
    "dh_flat_deformed",
    "dh_curved",
    "sigma_coframe",
    "gibbons_hawking_coframe",
    "monopole_residual",
    "eq1_residual",
    "pde_residual",
    "DH_PATTERNS",
    "NORMALIZATIONS",
]

_I = _coerce(GaussQ(0, 1))
HALF = Fraction(1, 2)


def _grad(f):
    f = _coerce(f)
    return Form(1, {(m,): f.diff(COORD_NAMES[m]) for m in range(4)})


def _laplacian(f):
    f = _coerce(f)
    return sum((f.diff(n).diff(n) for n in COORD_NAMES[1:]), Expr())


def _lower_bound(coord, strict=True):
    def check(box):
        lo = box[coord][0]
        if lo <= 0 if strict else lo < 0:
            return f"{coord} must stay > 0 (box starts at {lo})"
        return None

    return check


def _avoid_zero(coord):
    def check(box):
        lo, hi = box[coord]
        if lo <= 0 <= hi:
            return f"{coord} = 0 lies inside the box [{lo}, {hi}]"
        return None

    return check


def _avoid_origin_and_cut(box):
    (a1, b1), (a2, b2) = box["x1"], box["x2"]
    if a2 <= 0 <= b2 and a1 <= 0:
        return "box meets z = 0 or the branch cut x1 <= 0, x2 = 0"
    return None


@dataclass
class SolutionCase:
    """A closed-form configuration with the residuals that certify it.

    ``checks`` maps a convention label to a list of (equation name,
    residual); the case is certified when every residual of at least one
    convention vanishes. ``info`` holds residuals that are reported but
    not expected to vanish.
    """

    name: str
    params: tuple
    box: dict
    singular: tuple
    checks: dict
    pair: GaugePair | None = None
    composites: dict = field(default_factory=dict)
    pde: Expr | None = None
    info: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def box_problems(self, box):
        return [msg for chk in self.singular if (msg := chk(box)) is not None]


_DEFAULT_BOX = {c: (0.5, 2.0) for c in COORD_NAMES}


# ---------------------------------------------------------------------------
# Witten's reduction
# ---------------------------------------------------------------------------


def witten_v(r=RR):
    """v = -r log|z| - log y with z = x1 + i x2, y = x3."""
    r = _coerce(r)
    return -(r * log(modulus(X1 + _I * X2))) - log(X3)


def _z_power(r):
    z = X1 + _I * X2
    return power(z, _coerce(r))


def _dbar(f):
    return f.diff("x1") + f.diff("x2") * _I


def _witten_pde(v, r):
    # -(d1^2 + d2^2 + dy^2) v + |z|^{2r} e^{2v}
    z = X1 + _I * X2
    return -_laplacian(v) + power(modulus(z), _coerce(r) * 2) * exp(v * 2)


def witten_classical(r=RR):
    """Witten's diagonal ansatz with v = -r log|z| - log y."""
    r = _coerce(r)
    v = witten_v(r)
    a1 = SIGMA3 * (-_dbar(v) * HALF)
    phi0 = SIGMA3 * (-_I * v.diff("x3") * HALF)
    a3 = RAISE * (_z_power(r) * exp(v))
    a2 = phi0 * (-_I)  # A_3 = 0
    # anti-hermitian split a1 = A1 + i A2, a3 = phi1 - i phi2
    A1 = (a1 - a1.adjoint()) * HALF
    A2 = (a1 + a1.adjoint()) * (-_I * HALF)
    phi1 = (a3 - a3.adjoint()) * HALF
    phi2 = (a3 + a3.adjoint()) * (_I * HALF)
    pair = GaugePair(
        Form(1, {(1,): A1, (2,): A2}, MATRIX),
        Form(1, {(0,): phi0, (1,): phi1, (2,): phi2}, MATRIX),
    )
    F12_display = SIGMA3 * (_I * _laplacian_planar(v) * HALF)
    pde = _witten_pde(v, r)
    checks = [("field-equation", pde)]
    checks += witten_operator_check(a1, a2, a3)
    checks.append(("F12-display", curvature(pair)[(1, 2)] - F12_display))
    return SolutionCase(
        name="witten-classical",
        params=("r",),
        box=dict(_DEFAULT_BOX),
        singular=(_lower_bound("x3"), _avoid_origin_and_cut),
        checks={"display": checks},
        pair=pair,
        composites={"a1": a1, "a2": a2, "a3": a3, "v": v},
        pde=pde,
    )


def _laplacian_planar(f):
    return f.diff("x1").diff("x1") + f.diff("x2").diff("x2")


def witten_deformed(r=RR, hbar=HBAR, beta=BETA):
    """Phase-space image of Witten's ansatz.

    a1 = -hbar dbar v chi3, a2 = A3 - i Phi0 = -hbar d3 v chi3 and
    a3 = i hbar z^r e^v (chi2 - i chi1). The connection components are
    A_j = i hbar alpha_j chi3 with alpha1 = -d2 v, alpha2 = d1 v, the real
    split of a1 = A1 + i A2.
    """
    r, hbar = _coerce(r), _coerce(hbar)
    v = witten_v(r)
    c1, c2, c3 = (chi(i, hbar, beta) for i in (1, 2, 3))
    a1 = c3 * (-hbar * _dbar(v))
    phi0 = c3 * (-_I * hbar * v.diff("x3"))
    a2 = phi0 * (-_I)
    a3 = (c2 - c1 * _I) * (_I * hbar * _z_power(r) * exp(v))
    ih = _I * hbar
    A = Form(1, {(1,): c3 * (-ih * v.diff("x2")), (2,): c3 * (ih * v.diff("x1"))}, MOYAL)
    pair = GaugePair(A, Form(1, {(0,): phi0}, MOYAL))
    F12_display = c3 * (ih * _laplacian_planar(v))
    pde = _witten_pde(v, r)
    checks = [("field-equation", pde)]
    checks += witten_operator_check(a1, a2, a3)
    checks.append(("F12-display", moyal_curvature(pair)[(1, 2)] - F12_display))
    checks.append(("a1-split", (A[(1,)] + A[(2,)] * _I) - a1))
    return SolutionCase(
        name="witten-deformed",
        params=("r", "hbar", "beta"),
        box=dict(_DEFAULT_BOX),
        singular=(_lower_bound("x3"), _avoid_origin_and_cut),
        checks={"display": checks},
        pair=pair,
        composites={"a1": a1, "a2": a2, "a3": a3, "v": v},
        pde=pde,
    )


# ---------------------------------------------------------------------------
# ansatz built from self-dual 2-forms
# ---------------------------------------------------------------------------


def dh_ansatz(G, H, frame=None, generators=None):
    """A = sum_i T_i *(psi_i+ ^ dG), phi = sum_i T_i *(psi_i+ ^ dH).

    ``generators`` defaults to t_a = -(i/2) sigma_a; pass chi functions (or
    any coefficient triple) for the phase-space version.
    """
    gens = generators or [su2_generator(a) for a in (1, 2, 3)]
    dG, dH = _grad(G), _grad(H)
    A = phi = None
    for i in (1, 2, 3):
        psi = psi_plus(i, frame)
        a = hodge(wedge(psi, dG), frame).tensor(gens[i - 1])
        f = hodge(wedge(psi, dH), frame).tensor(gens[i - 1])
        A = a if A is None else A + a
        phi = f if phi is None else phi + f
    return GaugePair(A, phi, frame)


def eq1_residual(G, H, frame=None):
    """Box G + |grad G|^2 - |grad H|^2 with Box = *d*d for the frame metric."""
    dG, dH = _grad(G), _grad(H)
    box = hodge(exterior_derivative(hodge(dG, frame)), frame)[()]
    fG, fH = to_frame(dG, frame) if frame else dG, to_frame(dH, frame) if frame else dH
    sq = lambda f: sum((f[(a,)] * f[(a,)] for a in range(4)), Expr())
    return box + sq(fG) - sq(fH)


def _flat_G_H():
    G = log(modulus(X3)) * (-HALF)
    H = log(modulus(X3)) * (sqrt(3) * HALF)
    return G, H


def dh_flat():
    """G = -1/2 ln|x3|, H = (sqrt 3 / 2) ln|x3| on flat R^4."""
    G, H = _flat_G_H()
    pair = dh_ansatz(G, H)
    plus, minus, zero = nonabelian_sw_residuals(pair)
    pde = eq1_residual(G, H)
    checks = [
        ("eq1", pde),
        ("(F-phi^phi)+", plus),
        ("(D phi)-", minus),
        ("D*phi", zero),
    ]
    return SolutionCase(
        name="dh-flat-classical",
        params=(),
        box=dict(_DEFAULT_BOX),
        singular=(_avoid_zero("x3"),),
        checks={"classical": checks},
        pair=pair,
        pde=pde,
        extras={"G": G, "H": H},
    )


# coefficient of (dx0, dx1, dx2) in units of d3G, per generator index
DH_PATTERNS = {
    "display": ((3, 1), (2, 1), (1, 1)),
    "operator": ((3, -1), (2, 1), (1, -1)),
}


def _normalization(name, hbar):
    hbar = _coerce(hbar)
    return {
        "unit": _coerce(1),
        "ihbar": _I * hbar,
        "-ihbar": -(_I * hbar),
    }[name]


NORMALIZATIONS = ("unit", "ihbar", "-ihbar")


def _flat_deformed_pair(pattern, norm, hbar, beta):
    G, H = _flat_G_H()
    lam = _normalization(norm, hbar)
    c = {i: chi(i, hbar, beta) for i in (1, 2, 3)}

    def field_of(f):
        d3 = f.diff("x3") * lam
        return Form(
            1, {(mu,): c[i] * (d3 * s) for mu, (i, s) in enumerate(DH_PATTERNS[pattern])}, MOYAL
        )

    return GaugePair(field_of(G), field_of(H))


def dh_flat_deformed(hbar=HBAR, beta=BETA, patterns=None, normalizations=None):
    """Phase-space flat solution under every tracked field convention.

    Conventions are ``pattern/normalization``: the generator sign pattern
    (as displayed, or as in the operator form) and an overall factor
    (1, i hbar or -i hbar) multiplying both fields.
    """
    G, H = _flat_G_H()
    checks = {}
    pairs = {}
    info = []
    for pat in patterns or DH_PATTERNS:
        for norm in normalizations or NORMALIZATIONS:
            gp = _flat_deformed_pair(pat, norm, hbar, beta)
            plus, minus, zero = deformed_sw_residuals(gp)
            label = f"{pat}/{norm}"
            pairs[label] = gp
            checks[label] = [
                ("eq1", eq1_residual(G, H)),
                ("(F-Phi^*Phi)+", plus),
                ("(D_M Phi)-", minus),
                ("D_M*Phi", zero),
            ]
            wplus, wminus, _ = deformed_sw_residuals(gp, variant="weyl")
            info += [(f"{label} weyl (F-Phi^Phi)+", wplus), (f"{label} weyl (D_M Phi)-", wminus)]
    return SolutionCase(
        name="dh-flat-deformed",
        params=("hbar", "beta"),
        box=dict(_DEFAULT_BOX),
        singular=(_avoid_zero("x3"),),
        checks=checks,
        pair=pairs.get("display/unit"),
        pde=eq1_residual(G, H),
        info=info,
        extras={"pairs": pairs, "G": G, "H": H},
    )


# ---------------------------------------------------------------------------
# curved background
# ---------------------------------------------------------------------------


def sigma_coframe():
    """sigma0 = x3^-2 (dx0 + x2 dx1), sigma_i = dx^i / x3."""
    inv = power(X3, -1)
    inv2 = power(X3, -2)
    return Coframe(
        [[inv2, X2 * inv2, 0, 0], [0, inv, 0, 0], [0, 0, inv, 0], [0, 0, 0, inv]],
        name="sigma",
    )


def gibbons_hawking_coframe(V=X3, alpha=None):
    """e0 = V^-1/2 (dx0 + alpha), e_i = V^1/2 dx^i."""
    alpha = alpha if alpha is not None else Form(1, {(1,): X2})
    V = _coerce(V)
    s, si = power(V, HALF), power(V, -HALF)
    a = [alpha[(m,)] for m in range(4)]
    return Coframe(
        [[si, si * a[1], si * a[2], si * a[3]], [0, s, 0, 0], [0, 0, s, 0], [0, 0, 0, s]],
        name="gibbons-hawking",
    )


def _hodge3(omega):
    """Flat Hodge star on the (x1, x2, x3) slice for 1-forms."""
    out = {}
    for (m,), c in omega.comps.items():
        j, k = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[m]
        out[(j, k)] = c
    return Form(2, out, omega.algebra)


def monopole_residual(V=X3, alpha=None):
    """*_3 dV + d alpha (vanishes for Gibbons-Hawking data)."""
    alpha = alpha if alpha is not None else Form(1, {(1,): X2})
    V = _coerce(V)
    dV = Form(1, {(m,): V.diff(COORD_NAMES[m]) for m in (1, 2, 3)})
    return _hodge3(dV) + exterior_derivative(alpha)


def _sigma_form(frame, weights, algebra):
    e = frame.forms()
    out = None
    for a, x in weights:
        f = e[a].tensor(x)
        out = f if out is None else out + f
    return out if out is not None else Form.zero(1, algebra)


def dh_curved(hbar=HBAR, beta=BETA, V=X3, alpha=None):
    """Phase-space solution on the sigma coframe.

    A = 3/4 (sigma2 chi1 - sigma1 chi2 + sigma0 chi3), Phi = -(sqrt21/3) A,
    with the displayed field strength as expected curvature. The scalar
    equation is taken on the Gibbons-Hawking metric built from (V, alpha),
    whose self-dual 2-forms agree with the sigma frame ones. Conventions:
    ``unit`` compares F(A) with the display; ``ihbar`` rescales the fields
    by i hbar and compares with i hbar times the display.
    """
    frame = sigma_coframe()
    e = frame.forms()
    c = {i: chi(i, hbar, beta) for i in (1, 2, 3)}
    q = Fraction(3, 4)
    A = _sigma_form(frame, [(2, c[1] * q), (1, c[2] * (-q)), (0, c[3] * q)], MOYAL)
    k = -sqrt(21) * Fraction(1, 3)
    Phi = A * k

    def two(a, b):
        return wedge(e[a], e[b])

    F_display = (
        (two(0, 1) * Fraction(9, 16) + two(2, 3) * Fraction(3, 4)).tensor(c[1])
        + (two(0, 2) * Fraction(9, 16) - two(1, 3) * Fraction(3, 4)).tensor(c[2])
        + (two(0, 3) * Fraction(3, 2) - two(1, 2) * Fraction(3, 16)).tensor(c[3])
    )
    G = -log(X3) * q + log(_coerce(21)) * Fraction(1, 4) - log(_coerce(2))
    H = -G * sqrt(21) * Fraction(1, 3)

    C = structure_constants(frame)
    const_res = []
    for key in sorted(C):
        for n in COORD_NAMES:
            const_res.append(C[key].diff(n))

    gh_eq1 = eq1_residual(G, H, gibbons_hawking_coframe(V, alpha))
    common = [
        ("monopole", monopole_residual(V, alpha)),
        ("sigma-structure-constant", const_res),
        ("eq1 (Gibbons-Hawking metric)", gh_eq1),
    ]
    checks = {}
    for norm in ("unit", "ihbar"):
        lam = _normalization(norm, hbar)
        gp = GaugePair(A * lam, Phi * lam, frame)
        F = moyal_curvature(gp)
        checks[norm] = common + [("F-display", F - F_display * lam)]

    ansatz = dh_ansatz(G, H, frame, [c[1], c[2], c[3]])
    gp_unit = GaugePair(A, Phi, frame)
    gp_ih = GaugePair(A * _normalization("ihbar", hbar), Phi * _normalization("ihbar", hbar), frame)
    info = [
        ("ansatz-vs-display A", ansatz.A - A),
        ("ansatz-vs-display Phi", ansatz.phi - Phi),
        ("eq1 (sigma metric)", eq1_residual(G, H, frame)),
    ]
    for label, gp in (("unit", gp_unit), ("ihbar", gp_ih)):
        plus, minus, zero = deformed_sw_residuals(gp)
        info += [
            (f"{label} (F-Phi^*Phi)+", plus),
            (f"{label} (D_M Phi)-", minus),
            (f"{label} D_M*Phi", zero),
        ]
    return SolutionCase(
        name="dh-curved",
        params=("hbar", "beta"),
        box=dict(_DEFAULT_BOX),
        singular=(_lower_bound("x3"),),
        checks=checks,
        pair=gp_unit,
        pde=gh_eq1,
        info=info,
        extras={"frame": frame, "F_display": F_display, "G": G, "H": H},
    )


def pde_residual(case, at):
    """|scalar field-equation residual| of the case at a point."""
    if case.pde is None:
        raise ValueError(f"{case.name} has no scalar equation")
    return np.abs(evaluate(case.pde, at))
