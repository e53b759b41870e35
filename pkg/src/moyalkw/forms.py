"""Differential forms on a 4D coordinate patch.

Components are stored on strictly increasing index tuples without any
1/k! weight, so ``omega = sum_{I increasing} omega_I dx^I``. Coefficients
live in one of the algebras of :mod:`moyalkw.algebra`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .algebra import MATRIX, MOYAL, SCALAR, AlgebraMismatch, algebra_of
from .expr import COORD_NAMES, Expr, _coerce, evaluate, power
from .phase import PhasePoly, star

__all__ = [
    "Form",
    "Coframe",
    "DegreeError",
    "SingularFrame",
    "perm_sign",
    "exterior_derivative",
    "wedge",
    "moyal_wedge",
    "hodge",
    "sd_asd_project",
    "psi_plus",
    "structure_constants",
    "ricci",
    "flat_coframe",
    "dx",
    "LEVI_CIVITA_3",
]

DIM = 4


class DegreeError(ValueError):
    pass


class SingularFrame(ArithmeticError):
    pass


def perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (0 if there is a repeat)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def LEVI_CIVITA_3(i, j, k):
    return perm_sign((i, j, k))


class Form:
    """A k-form ``{increasing index tuple: coefficient}``."""

    __slots__ = ("degree", "comps", "algebra")

    def __init__(self, degree, comps=None, algebra=None):
        if not 0 <= degree <= DIM:
            raise DegreeError(f"degree {degree} outside 0..{DIM}")
        self.degree = degree
        out = {}
        for idx, c in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DegreeError(f"index {idx} does not match degree {degree}")
            if isinstance(c, (int, float, complex, Fraction)):
                c = _coerce(c)
            s = perm_sign(idx)
            if s == 0:
                continue
            key = tuple(sorted(idx))
            if algebra is None:
                algebra = algebra_of(c)
            elif not algebra.accepts(c):
                raise AlgebraMismatch(f"{type(c).__name__} coefficient in {algebra!r} form")
            if s < 0:
                c = -c
            if key in out:
                c = out[key] + c
            if c.is_zero():
                out.pop(key, None)
            else:
                out[key] = c
        self.comps = out
        self.algebra = algebra if algebra is not None else SCALAR

    @classmethod
    def _raw(cls, degree, comps, algebra):
        obj = cls.__new__(cls)
        obj.degree, obj.comps, obj.algebra = degree, comps, algebra
        return obj

    @classmethod
    def zero(cls, degree, algebra=SCALAR):
        return cls._raw(degree, {}, algebra)

    @classmethod
    def scalar(cls, c, algebra=None):
        return cls(0, {(): c}, algebra or algebra_of(_coerce(c) if not hasattr(c, "is_zero") else c))

    def __getitem__(self, idx):
        """Component with any index order (antisymmetric)."""
        if isinstance(idx, int):
            idx = (idx,)
        s = perm_sign(idx)
        if s == 0:
            return self.algebra.zero()
        c = self.comps.get(tuple(sorted(idx)))
        if c is None:
            return self.algebra.zero()
        return c if s > 0 else -c

    def is_zero(self):
        return not self.comps

    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.degree != self.degree:
            raise DegreeError(f"degree mismatch {self.degree} vs {other.degree}")
        if self.comps and other.comps and self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def _alg(self, other):
        return self.algebra if self.comps else other.algebra

    def __add__(self, other):
        self._check(other)
        out = dict(self.comps)
        for k, c in other.comps.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        return Form._raw(self.degree, out, self._alg(other))

    def __neg__(self):
        return Form._raw(self.degree, {k: -c for k, c in self.comps.items()}, self.algebra)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        """Scalar action of an Expr/number on every component."""
        if isinstance(s, Form):
            return NotImplemented
        s = _coerce(s)
        if s is None:
            return NotImplemented
        out = {}
        for k, c in self.comps.items():
            v = c * s
            if not v.is_zero():
                out[k] = v
        return Form._raw(self.degree, out, self.algebra)

    __rmul__ = __mul__

    def tensor(self, x):
        """Scalar form times an algebra element: sum omega_I x dx^I."""
        if self.algebra != SCALAR:
            raise AlgebraMismatch("tensor() needs a scalar form")
        alg = algebra_of(x)
        out = {}
        for k, c in self.comps.items():
            v = x * c
            if not v.is_zero():
                out[k] = v
        return Form._raw(self.degree, out, alg)

    def map(self, f, algebra=None):
        comps = {k: f(c) for k, c in self.comps.items()}
        return Form(self.degree, comps, algebra or self.algebra)

    def leaves(self):
        """All scalar Expr leaves of all components, in sorted index order."""
        from .algebra import leaves

        out = []
        for k in sorted(self.comps):
            out.extend(leaves(self.comps[k]))
        return out

    def equals(self, other):
        return (self - other).is_zero()

    def __eq__(self, other):
        return isinstance(other, Form) and self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        parts = [f"{k}: {c}" for k, c in sorted(self.comps.items())]
        return f"Form[{self.degree}]({', '.join(parts)})"


def dx(*indices):
    return Form(len(indices), {tuple(indices): 1})


# ---------------------------------------------------------------------------
# exterior calculus
# ---------------------------------------------------------------------------


def exterior_derivative(omega):
    """d acting on coordinate dependence only (never on p, q)."""
    if omega.degree >= DIM:
        raise DegreeError("d of a 4-form")
    out = {}
    alg = omega.algebra
    for idx, c in omega.comps.items():
        for mu in range(DIM):
            if mu in idx:
                continue
            dc = c.diff(COORD_NAMES[mu])
            if dc.is_zero():
                continue
            new = (mu,) + idx
            s = perm_sign(new)
            key = tuple(sorted(new))
            v = dc if s > 0 else -dc
            if key in out:
                v = out[key] + v
            out[key] = v
    return Form._raw(omega.degree + 1, {k: v for k, v in out.items() if not v.is_zero()}, alg)


def _wedge_with(omega, eta, mul, algebra):
    k = omega.degree + eta.degree
    if k > DIM:
        raise DegreeError(f"wedge degree {k} > {DIM}")
    out = {}
    for i, a in omega.comps.items():
        for j, b in eta.comps.items():
            new = i + j
            s = perm_sign(new)
            if s == 0:
                continue
            v = mul(a, b)
            if v.is_zero():
                continue
            key = tuple(sorted(new))
            if s < 0:
                v = -v
            if key in out:
                v = out[key] + v
            out[key] = v
    return Form._raw(k, {kk: v for kk, v in out.items() if not v.is_zero()}, algebra)


def _common_algebra(omega, eta):
    if omega.comps and eta.comps and omega.algebra != eta.algebra:
        raise AlgebraMismatch(f"{omega.algebra!r} vs {eta.algebra!r}")
    return omega.algebra if omega.comps else eta.algebra


def wedge(omega, eta):
    """Graded product with the coefficient algebra's product.

    For matrix 1-forms (A^A)_{mu nu} = [A_mu, A_nu] (mu < nu).
    """
    alg = _common_algebra(omega, eta)
    return _wedge_with(omega, eta, alg.mul, alg)


def moyal_wedge(omega, eta):
    """Wedge with coefficients multiplied by the star product.

    With the stored (weight-free) components this reduces to the ordinary
    wedge when no coefficient depends on p, q.
    """
    for f in (omega, eta):
        if f.comps and f.algebra != MOYAL:
            raise AlgebraMismatch("moyal_wedge needs phase-space coefficients")
    return _wedge_with(omega, eta, star, MOYAL)


# ---------------------------------------------------------------------------
# coframes
# ---------------------------------------------------------------------------


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Expr()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _det(minor)
        total = total + (t if j % 2 == 0 else -t)
    return total


class Coframe:
    """Four scalar 1-forms e^a = E[a][mu] dx^mu; metric sum_a e^a (x) e^a."""

    def __init__(self, rows, orientation=1, name="coframe"):
        self.E = [[_coerce(x) for x in row] for row in rows]
        if len(self.E) != DIM or any(len(r) != DIM for r in self.E):
            raise ValueError("coframe needs a 4x4 matrix")
        self.orientation = orientation
        self.name = name
        self.flat = all(
            self.E[a][m] == (1 if a == m else 0) for a in range(DIM) for m in range(DIM)
        )
        self._inv = None
        self._det = None

    @classmethod
    def from_forms(cls, forms, orientation=1, name="coframe"):
        rows = []
        for f in forms:
            if f.degree != 1 or f.algebra != SCALAR:
                raise DegreeError("coframe needs scalar 1-forms")
            rows.append([f[(m,)] for m in range(DIM)])
        return cls(rows, orientation, name)

    def one_form(self, a):
        return Form(1, {(m,): self.E[a][m] for m in range(DIM)})

    def forms(self):
        return [self.one_form(a) for a in range(DIM)]

    def det(self):
        if self._det is None:
            self._det = _det(self.E)
        return self._det

    def inverse(self):
        """Einv with dx^mu = sum_a Einv[mu][a] e^a."""
        if self._inv is None:
            d = self.det()
            if d.is_zero():
                raise SingularFrame(f"{self.name} is degenerate")
            dinv = power(d, -1)
            inv = [[None] * DIM for _ in range(DIM)]
            for i in range(DIM):
                for j in range(DIM):
                    minor = [row[:j] + row[j + 1:] for k, row in enumerate(self.E) if k != i]
                    cof = _det(minor)
                    if (i + j) % 2:
                        cof = -cof
                    inv[j][i] = cof * dinv
            self._inv = inv
        return self._inv

    def check_invertible(self, points):
        """Raise SingularFrame if det vanishes at any of the sample points."""
        v = np.atleast_1d(evaluate(self.det(), points))
        bad = np.nonzero(np.abs(v) < 1e-14)[0]
        if len(bad):
            raise SingularFrame(f"{self.name} degenerate at sample {int(bad[0])}")

    def metric(self):
        return [
            [sum((self.E[a][m] * self.E[a][n] for a in range(DIM)), Expr()) for n in range(DIM)]
            for m in range(DIM)
        ]


def flat_coframe():
    return Coframe([[1 if a == m else 0 for m in range(DIM)] for a in range(DIM)], name="flat")


def _change_basis(omega, M):
    """Rewrite omega given old basis 1-forms theta^i = sum_j M[i][j] phi^j."""
    k = omega.degree
    if k == 0:
        return omega
    out = {}
    targets = list(itertools.combinations(range(DIM), k))
    for I, c in omega.comps.items():
        for J in targets:
            minor = [[M[i][j] for j in J] for i in I]
            d = _det(minor)
            if d.is_zero():
                continue
            v = c * d
            out[J] = out[J] + v if J in out else v
    return Form._raw(k, {J: v for J, v in out.items() if not v.is_zero()}, omega.algebra)


def to_frame(omega, frame):
    """Components of omega in the e^a basis."""
    if frame.flat:
        return omega
    return _change_basis(omega, frame.inverse())


def from_frame(omega_frame, frame):
    if frame.flat:
        return omega_frame
    return _change_basis(omega_frame, frame.E)


def _hodge_orthonormal(omega):
    k = omega.degree
    out = {}
    for I, c in omega.comps.items():
        J = tuple(i for i in range(DIM) if i not in I)
        s = perm_sign(I + J)
        out[J] = c if s > 0 else -c
    return Form._raw(DIM - k, out, omega.algebra)


def hodge(omega, frame=None, check_at=None):
    """Hodge dual for the coframe metric, orientation e^0^e^1^e^2^e^3 > 0."""
    frame = frame or flat_coframe()
    if check_at is not None:
        frame.check_invertible(check_at)
    w = to_frame(omega, frame)
    h = _hodge_orthonormal(w)
    if frame.orientation < 0:
        h = -h
    return from_frame(h, frame)


def sd_asd_project(omega, frame=None, check_at=None):
    """(omega+, omega-) with omega+- = (omega +- *omega)/2."""
    if omega.degree != 2:
        raise DegreeError("self-dual projection needs a 2-form")
    star_w = hodge(omega, frame, check_at)
    half = Fraction(1, 2)
    return (omega + star_w) * half, (omega - star_w) * half


def psi_plus(i, frame=None):
    """e^0 ^ e^i + (1/2) eps_ijk e^j ^ e^k (self-dual)."""
    frame = frame or flat_coframe()
    e = frame.forms()
    j, k = [(2, 3), (3, 1), (1, 2)][i - 1]
    return wedge(e[0], e[i]) + wedge(e[j], e[k])


def structure_constants(frame):
    """C[a][(b, c)] with de^a = C^a_bc e^b ^ e^c summed over all b, c
    (C antisymmetric in b, c)."""
    out = {}
    for a in range(DIM):
        de = to_frame(exterior_derivative(frame.one_form(a)), frame)
        for b in range(DIM):
            for c in range(DIM):
                if b == c:
                    continue
                v = de[(b, c)] * Fraction(1, 2)
                if not v.is_zero():
                    out[(a, b, c)] = v
    return out


def ricci(frame):
    """Ricci tensor of the coframe metric; only Ricci-flat patches are
    supported, so this is the zero tensor. Curved Ricci terms would hook in
    here."""
    return [[Expr() for _ in range(DIM)] for _ in range(DIM)]
