"""Polynomials in the phase-space pair (p, q) and their Moyal star algebra."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .expr import BETA, HBAR, Expr, const, substitute, _coerce
from .numbers import GaussQ

__all__ = [
    "PhasePoly",
    "InvalidBinding",
    "star",
    "moyal_bracket",
    "poisson_bracket",
    "bidifferential",
    "chi",
    "substitute_params",
    "random_phase_poly",
]

_PHASE = frozenset({"p", "q"})
_COORD = frozenset({"x0", "x1", "x2", "x3"})


class InvalidBinding(ValueError):
    pass


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


class PhasePoly:
    """Finite sum ``sum c[m, n] * p**m * q**n`` with p,q-free Expr
    coefficients. The zero polynomial is the empty map."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        out = {}
        for mn, c in (coeffs or {}).items():
            c = _coerce(c)
            if c.free_symbols & _PHASE:
                raise ValueError("PhasePoly coefficients must be free of p and q")
            if not c.is_zero():
                out[mn] = c
        self.coeffs = out

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_expr(cls, e):
        """Split an Expr that is polynomial in p, q."""
        e = _coerce(e)
        out = {}
        for mono, c in e.terms.items():
            m = n = 0
            rest = []
            for a, k in mono:
                if a.kind == "sym" and a.args[0] == "p":
                    m = k
                elif a.kind == "sym" and a.args[0] == "q":
                    n = k
                else:
                    if a.free & _PHASE:
                        raise ValueError(f"not polynomial in p, q: {a!r}")
                    rest.append((a, k))
            if m < 0 or n < 0:
                raise ValueError("negative power of p or q")
            out[(m, n)] = out.get((m, n), Expr()) + Expr({tuple(rest): c})
        return cls(out)

    @classmethod
    def scalar(cls, e):
        return cls({(0, 0): e})

    def to_expr(self):
        from .expr import P, Q

        out = Expr()
        for (m, n), c in self.coeffs.items():
            out = out + c * P ** m * Q ** n
        return out

    # structure -------------------------------------------------------------
    def degree(self):
        return max((m + n for m, n in self.coeffs), default=-1)

    def is_zero(self):
        return not self.coeffs

    def is_pq_free(self):
        return all(mn == (0, 0) for mn in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            other = PhasePoly.scalar(_coerce(other))
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((mn, str(c)) for mn, c in self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "PhasePoly(0)"
        parts = [f"({c})*p^{m}*q^{n}" for (m, n), c in sorted(self.coeffs.items())]
        return "PhasePoly(" + " + ".join(parts) + ")"

    # linear structure ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, PhasePoly):
            o = _coerce(other)
            if o is None:
                return NotImplemented
            other = PhasePoly.scalar(o)
        out = dict(self.coeffs)
        for mn, c in other.coeffs.items():
            v = out.get(mn)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(mn, None)
            else:
                out[mn] = v
        return PhasePoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PhasePoly._raw({mn: -c for mn, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Pointwise product; scalar Exprs/numbers act coefficient-wise."""
        if isinstance(other, PhasePoly):
            out = {}
            for (m1, n1), c1 in self.coeffs.items():
                for (m2, n2), c2 in other.coeffs.items():
                    k = (m1 + m2, n1 + n2)
                    out[k] = out.get(k, Expr()) + c1 * c2
            return PhasePoly._raw({k: v for k, v in out.items() if not v.is_zero()})
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return PhasePoly()
        if o.free_symbols & _PHASE:
            return self * PhasePoly.from_expr(o)
        out = {}
        for mn, c in self.coeffs.items():
            v = c * o
            if not v.is_zero():
                out[mn] = v
        return PhasePoly._raw(out)

    __rmul__ = __mul__

    def map_coeffs(self, f):
        return PhasePoly({mn: f(c) for mn, c in self.coeffs.items()})

    def diff(self, symbol):
        """Partial derivative; p and q act on exponents, anything else on
        the coefficients."""
        from .expr import _symbol_name, differentiate

        name = _symbol_name(symbol)
        if name == "p":
            return self._dpq(1, 0)
        if name == "q":
            return self._dpq(0, 1)
        return self.map_coeffs(lambda c: differentiate(c, name))

    def _dpq(self, a, b):
        """d^a/dp^a d^b/dq^b."""
        out = {}
        for (m, n), c in self.coeffs.items():
            if m < a or n < b:
                continue
            f = _falling(m, a) * _falling(n, b)
            out[(m - a, n - b)] = c.scale(f) if f != 1 else c
        return PhasePoly._raw(out)

    def conjugate(self):
        from .expr import conjugate

        return self.map_coeffs(conjugate)

    def leaves(self):
        return list(self.coeffs.values())

    def subs(self, bindings):
        return substitute_params(self, bindings)


# ---------------------------------------------------------------------------
# star product
# ---------------------------------------------------------------------------


def bidifferential(f, g, k):
    """f P^k g with P = (d<-/dq)(d->/dp) - (d<-/dp)(d->/dq)."""
    out = PhasePoly()
    for j in range(k + 1):
        left = f._dpq(j, k - j)
        if left.is_zero():
            continue
        right = g._dpq(k - j, j)
        if right.is_zero():
            continue
        term = left * right
        s = comb(k, j) * (-1) ** j
        out = out + (term * const(s) if s != 1 else term)
    return out


def _star_weight(k):
    # (i hbar / 2)^k / k!
    return HBAR ** k * const(GaussQ(0, 1) ** k * Fraction(1, 2 ** k * factorial(k)))


def star(f, g):
    """Moyal product; the series terminates at min(deg f, deg g)."""
    f, g = _as_poly(f), _as_poly(g)
    if f.is_zero() or g.is_zero():
        return PhasePoly()
    out = f * g
    kmax = min(f.degree(), g.degree())
    for k in range(1, kmax + 1):
        t = bidifferential(f, g, k)
        if not t.is_zero():
            out = out + t * _star_weight(k)
    return out


def moyal_bracket(f, g):
    """(f*g - g*f)/(i hbar), formal in hbar."""
    f, g = _as_poly(f), _as_poly(g)
    if f.is_zero() or g.is_zero():
        return PhasePoly()
    comm = star(f, g) - star(g, f)
    return comm * (HBAR ** -1 * const(GaussQ(0, -1)))


def poisson_bracket(f, g):
    f, g = _as_poly(f), _as_poly(g)
    return f._dpq(0, 1) * g._dpq(1, 0) - f._dpq(1, 0) * g._dpq(0, 1)


def _as_poly(f):
    if isinstance(f, PhasePoly):
        return f
    e = _coerce(f)
    if e is None:
        raise TypeError(f"cannot use {f!r} as a phase-space polynomial")
    return PhasePoly.from_expr(e)


# ---------------------------------------------------------------------------
# su(2) generators
# ---------------------------------------------------------------------------


def chi(i, hbar=HBAR, beta=BETA):
    """Phase-space images of the anti-hermitian su(2) generators.

    {chi_i, chi_j}_M = -(1/(i hbar)) eps_ijk chi_k for every hbar, beta.
    """
    hbar, beta = _coerce(hbar), _coerce(beta)
    ii = const(GaussQ(0, 1))
    b = beta - Fraction(1, 2)
    inv_h = hbar ** -1
    if i == 1:
        # i(beta - 1/2) q - (q^2 - 1) p / (2 hbar)
        return PhasePoly({(0, 1): ii * b, (1, 2): -inv_h / 2, (1, 0): inv_h / 2})
    if i == 2:
        # -(beta - 1/2) q - i (q^2 + 1) p / (2 hbar)
        return PhasePoly({(0, 1): -b, (1, 2): -ii * inv_h / 2, (1, 0): -ii * inv_h / 2})
    if i == 3:
        # -i(beta - 1/2) + q p / hbar
        return PhasePoly({(0, 0): -ii * b, (1, 1): inv_h})
    raise ValueError("chi index must be 1, 2 or 3")


def substitute_params(f, bindings):
    """Bind parameter symbols (hbar, beta, r, t) inside every coefficient."""
    from .expr import _symbol_name

    names = {_symbol_name(k) for k in bindings}
    bad = names & (_PHASE | _COORD)
    if bad:
        raise InvalidBinding(f"cannot bind structural symbols: {sorted(bad)}")
    if not bindings:
        return f
    return f.map_coeffs(lambda c: substitute(c, bindings))


def random_phase_poly(rng, degree=4, terms=4, scale=5):
    """Seeded random polynomial of total degree <= ``degree`` with rational
    coefficients (``rng`` is a numpy Generator)."""
    out = {}
    for _ in range(terms):
        m = int(rng.integers(0, degree + 1))
        n = int(rng.integers(0, degree - m + 1))
        num = int(rng.integers(-scale, scale + 1))
        den = int(rng.integers(1, scale + 1))
        if num:
            out[(m, n)] = out.get((m, n), Expr()) + const(Fraction(num, den))
    return PhasePoly(out)
