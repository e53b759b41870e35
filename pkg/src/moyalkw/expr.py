"""Symbolic scalar expressions.

An :class:`Expr` is stored in a canonical *Laurent-polynomial-over-atoms*
form: a finite map from monomials to coefficients, where a monomial is a
sorted tuple of ``(atom, integer exponent)`` pairs. Atoms are symbols or
the transcendental nodes ``log``, ``exp``, ``abs`` (complex modulus),
``pow`` (non-integer or symbolic exponent) and ``inv`` (reciprocal of a
multi-term expression).

Because the representation is canonical under ``+``, ``-``, ``*`` and
integer powers, polynomial identities with exact coefficients are decided
by structural equality. Anything beyond that is checked with
:func:`equivalent_on_samples`.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Rational

import numpy as np

from .numbers import GaussQ, as_number, is_exact, number_conjugate

__all__ = [
    "Expr",
    "DomainError",
    "UnboundSymbol",
    "sym",
    "const",
    "log",
    "exp",
    "modulus",
    "sqrt",
    "power",
    "conjugate",
    "real_part",
    "imag_part",
    "differentiate",
    "evaluate",
    "evaluate_exact",
    "substitute",
    "canonicalize",
    "equivalent_on_samples",
    "COORDS",
    "X0",
    "X1",
    "X2",
    "X3",
    "P",
    "Q",
    "HBAR",
    "BETA",
    "RR",
    "T",
]


class DomainError(ArithmeticError):
    """Evaluation hit a pole, log(0) or an undefined power."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class UnboundSymbol(KeyError):
    """A free symbol has no value at the evaluation point."""


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------

_KIND_ORDER = {"sym": 0, "pow": 1, "abs": 2, "log": 3, "exp": 4, "inv": 5}
_TRANSCENDENTAL = {"log", "exp", "abs", "pow"}


class Atom:
    __slots__ = ("kind", "args", "key", "_hash", "free", "_dcache")

    def __init__(self, kind, args):
        self.kind = kind
        self.args = args
        if kind == "sym":
            self.key = (0, args[0])
            self.free = frozenset(args)
        else:
            self.key = (_KIND_ORDER[kind], kind + "(" + ",".join(str(a) for a in args) + ")")
            free = frozenset()
            for a in args:
                free |= a.free_symbols
            self.free = free
        self._hash = hash(self.key)
        self._dcache = {}

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (type(other) is Atom and self.key == other.key)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        if self.kind == "sym":
            return self.args[0]
        if self.kind == "pow":
            return f"({self.args[0]})^({self.args[1]})"
        if self.kind == "abs":
            return f"|{self.args[0]}|"
        if self.kind == "inv":
            return f"1/({self.args[0]})"
        return self.key[1]


_ATOMS: dict = {}


def _atom(kind, *args):
    a = Atom(kind, args)
    return _ATOMS.setdefault(a.key, a)


# ---------------------------------------------------------------------------
# Expr
# ---------------------------------------------------------------------------


def _mono_key(mono):
    return tuple((a.key, n) for a, n in mono)


class Expr:
    """Immutable canonical expression. Build with :func:`sym`, :func:`const`
    and ordinary arithmetic."""

    __slots__ = ("terms", "_str", "_hash", "_free")

    def __init__(self, terms=None):
        # terms: dict mono -> coefficient; caller guarantees canonical form
        self.terms = terms if terms is not None else {}
        self._str = None
        self._hash = None
        self._free = None

    # construction helpers ---------------------------------------------------
    @staticmethod
    def _term(coeff, mono=()):
        if not coeff:
            return Expr()
        return Expr({mono: coeff})

    @property
    def free_symbols(self):
        if self._free is None:
            free = frozenset()
            for mono in self.terms:
                for a, _ in mono:
                    free |= a.free
            self._free = free
        return self._free

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not mono for mono in self.terms)

    def is_exact(self):
        return all(is_exact(c) for c in self.terms.values())

    def constant_value(self):
        """Value of a constant expression (exact if possible)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), GaussQ(0))

    def has_transcendental(self):
        return any(a.kind in _TRANSCENDENTAL or a.kind == "inv" for m in self.terms for a, _ in m)

    def single_term(self):
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def atoms(self):
        out = set()
        for mono in self.terms:
            for a, _ in mono:
                out.add(a)
        return out

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Expr(out)

    __radd__ = __add__

    def __neg__(self):
        return Expr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _mul(self, power(other, -1))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _mul(other, power(self, -1))

    def __pow__(self, k):
        return power(self, k)

    def __rpow__(self, base):
        return power(_coerce(base), self)

    def scale(self, number):
        number = as_number(number)
        if not number:
            return Expr()
        out = {}
        for m, c in self.terms.items():
            v = c * number
            if v:
                out[m] = v
        return Expr(out)

    # identity ---------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Expr):
            return self.terms == other.terms
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(str(self))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]))

    def __str__(self):
        if self._str is None:
            if not self.terms:
                self._str = "0"
            else:
                parts = []
                for mono, c in self.sorted_terms():
                    factors = []
                    for a, n in mono:
                        factors.append(repr(a) if n == 1 else f"{a!r}^{n}")
                    cs = repr(c) if is_exact(c) else repr(complex(c))
                    if not factors:
                        parts.append(cs)
                    elif c == 1:
                        parts.append("*".join(factors))
                    else:
                        parts.append(cs + "*" + "*".join(factors))
                self._str = " + ".join(parts)
        return self._str

    def __repr__(self):
        return f"Expr({self})"

    # convenience methods mirroring module functions -------------------------
    def diff(self, symbol):
        return differentiate(self, symbol)

    def subs(self, bindings):
        return substitute(self, bindings)

    def conjugate(self):
        return conjugate(self)

    def __call__(self, **point):
        return evaluate(self, point)


def _coerce(value):
    if isinstance(value, Expr):
        return value
    try:
        return const(value)
    except TypeError:
        return None


def const(value):
    """Constant expression; ints/Fractions stay exact, floats promote."""
    if isinstance(value, Expr):
        return value
    c = as_number(value)
    return Expr._term(c)


def sym(name):
    return Expr({((_atom("sym", name), 1),): GaussQ(1)})


# ---------------------------------------------------------------------------
# multiplication and monomial normalization
# ---------------------------------------------------------------------------


def _mul(a, b):
    if not a.terms or not b.terms:
        return Expr()
    if len(b.terms) == 1 and () in b.terms:
        return a.scale(b.terms[()])
    if len(a.terms) == 1 and () in a.terms:
        return b.scale(a.terms[()])
    out = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            for m, cm in _mono_mul(m1, m2):
                v = c * cm if cm != 1 else c
                prev = out.get(m)
                if prev is not None:
                    v = prev + v
                if v:
                    out[m] = v
                elif prev is not None:
                    del out[m]
    return Expr(out)


@functools.lru_cache(maxsize=200_000)
def _mono_mul(m1, m2):
    """Product of two monomials as a tuple of (mono, coeff) terms."""
    if not m1:
        return ((m2, 1),)
    if not m2:
        return ((m1, 1),)
    d = dict(m1)
    for a, n in m2:
        d[a] = d.get(a, 0) + n
    return _normalize(d)


def _normalize(d):
    """Canonicalize an exponent map {atom: n}; returns (mono, coeff) terms."""
    plain = {}
    special = None
    n_exp = 0
    pow_bases = {}
    for a, n in d.items():
        if n == 0:
            continue
        k = a.kind
        if k == "abs" and (n >= 2 or n <= -1):
            sq = a.args[0] * conjugate(a.args[0])
            if len(sq.terms) == 1:
                special = special or []
                special.append(("abs", a, n, sq))
                continue
        elif k == "exp":
            n_exp += 1
            if n != 1:
                n_exp += 1
        elif k == "pow":
            pow_bases.setdefault(a.args[0], []).append((a, n))
        plain[a] = n
    if n_exp > 1:
        special = special or []
        arg = Expr()
        for a in [a for a in plain if a.kind == "exp"]:
            arg = arg + a.args[0].scale(plain.pop(a))
        special.append(("exp", arg))
    for base, items in pow_bases.items():
        if len(items) > 1 or items[0][1] != 1:
            special = special or []
            e = Expr()
            for a, n in items:
                plain.pop(a)
                e = e + a.args[1].scale(n)
            special.append(("pow", base, e))
    mono = tuple(sorted(plain.items(), key=lambda an: an[0].key))
    if not special:
        return ((mono, 1),)
    extra = Expr({mono: GaussQ(1)})
    for item in special:
        if item[0] == "abs":
            _, a, n, sq = item
            r, q = n % 2, n // 2
            f = power(sq, q)
            if r:
                f = _mul(f, Expr({((a, 1),): GaussQ(1)}))
        elif item[0] == "exp":
            f = exp(item[1])
        else:
            f = power(item[1], item[2])
        extra = _mul(extra, f)
    return tuple((m, c) for m, c in extra.terms.items())


# ---------------------------------------------------------------------------
# smart constructors
# ---------------------------------------------------------------------------


def _int_power(e, k):
    if k == 0:
        return const(1)
    if k == 1:
        return e
    st = e.single_term()
    if st is not None:
        mono, c = st
        if not mono:
            return const(c ** k)
        d = {a: n * k for a, n in mono}
        out = {}
        ck = c ** k
        for m, cm in _normalize(d):
            v = ck * cm
            if v:
                out[m] = out.get(m, 0) + v
        return Expr({m: v for m, v in out.items() if v})
    if k < 0:
        inv = Expr({((_atom("inv", e), 1),): GaussQ(1)})
        return _int_power(inv, -k) if k < -1 else inv
    out, base = const(1), e
    while k:
        if k & 1:
            out = _mul(out, base)
        k >>= 1
        if k:
            base = _mul(base, base)
    return out


def power(base, exponent):
    """``base ** exponent`` with integer powers expanded exactly and
    non-integer/symbolic powers kept as principal-branch ``pow`` atoms."""
    base = _coerce(base)
    if isinstance(exponent, Expr):
        ex = exponent
    else:
        ex = const(exponent)
    if ex.is_zero():
        return const(1)
    if base.is_zero():
        if ex.is_constant() and complex(ex.constant_value()).real > 0:
            return Expr()
        raise DomainError("0 raised to a non-positive power")
    if ex.is_constant():
        v = ex.constant_value()
        if is_exact(v) and v.is_real():
            fr = v.re
            if fr.denominator == 1:
                return _int_power(base, int(fr))
            if base.is_constant():
                bv = base.constant_value()
                if is_exact(bv) and bv.is_real() and bv.re > 0:
                    whole = fr.numerator // fr.denominator
                    frac = fr - whole
                    b = bv.re
                    # exact rational roots, e.g. 4^(1/2) = 2
                    num = _exact_root(b.numerator, frac)
                    den = _exact_root(b.denominator, frac)
                    if num is not None and den is not None:
                        return const(b ** whole * num / den)
                    at = Expr({((_atom("pow", base, const(frac)), 1),): GaussQ(1)})
                    return at.scale(b ** whole) if whole else at
        if base.is_constant() and (not is_exact(v) or not is_exact(base.constant_value())):
            b = complex(base.constant_value())
            return const(complex(np.exp(complex(v) * np.log(b))))
    if base == 1:
        return const(1)
    return Expr({((_atom("pow", base, ex), 1),): GaussQ(1)})


def _exact_root(n, frac):
    """n**frac if it is an integer, else None (n >= 0, 0 < frac < 1)."""
    if n == 1:
        return 1
    p, q = frac.numerator, frac.denominator
    r = round(n ** (1.0 / q))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** q == n:
            return cand ** p
    return None


def sqrt(e):
    return power(e, Fraction(1, 2))


def log(e):
    e = _coerce(e)
    if e == 1:
        return Expr()
    if e.is_zero():
        raise DomainError("log(0)")
    return Expr({((_atom("log", e), 1),): GaussQ(1)})


def exp(e):
    e = _coerce(e)
    if e.is_zero():
        return const(1)
    return Expr({((_atom("exp", e), 1),): GaussQ(1)})


def modulus(e):
    """Real modulus |e| of a complex expression."""
    e = _coerce(e)
    if e.is_zero():
        return Expr()
    st = e.single_term()
    if st is not None:
        mono, c = st
        if is_exact(c):
            cabs = sqrt(const(c.re * c.re + c.im * c.im))
        else:
            cabs = const(abs(complex(c)))
        if not mono:
            return cabs
        inner = Expr({mono: GaussQ(1)})
        return cabs * Expr({((_atom("abs", inner), 1),): GaussQ(1)})
    return Expr({((_atom("abs", e), 1),): GaussQ(1)})


# ---------------------------------------------------------------------------
# structural maps
# ---------------------------------------------------------------------------


def _rebuild(e, atom_map):
    """Rebuild ``e`` replacing each atom by ``atom_map(atom)`` (an Expr)."""
    out = Expr()
    cache = {}
    for mono, c in e.terms.items():
        t = const(c) if not isinstance(c, Expr) else c
        for a, n in mono:
            im = cache.get(a)
            if im is None:
                im = cache[a] = atom_map(a)
            t = _mul(t, power(im, n))
        out = out + t
    return out


def conjugate(e):
    """Complex conjugate, treating every symbol as real-valued."""
    e = _coerce(e)
    if all(a.kind == "sym" for m in e.terms for a, _ in m):
        return Expr({m: number_conjugate(c) for m, c in e.terms.items()})

    def amap(a):
        k = a.kind
        if k == "sym" or k == "abs":
            return Expr({((a, 1),): GaussQ(1)})
        if k == "log":
            return log(conjugate(a.args[0]))
        if k == "exp":
            return exp(conjugate(a.args[0]))
        if k == "inv":
            return power(conjugate(a.args[0]), -1)
        return power(conjugate(a.args[0]), conjugate(a.args[1]))

    return _rebuild(Expr({m: number_conjugate(c) for m, c in e.terms.items()}), amap)


def real_part(e):
    return (e + conjugate(e)) * Fraction(1, 2)


def imag_part(e):
    return (e - conjugate(e)) * GaussQ(0, Fraction(-1, 2))


def substitute(e, bindings):
    """Replace symbols by values/expressions; ``bindings`` maps names (or
    symbol Exprs) to numbers or Exprs."""
    e = _coerce(e)
    b = {}
    for k, v in bindings.items():
        name = _symbol_name(k)
        b[name] = _coerce(v)
    if not b or not (e.free_symbols & b.keys()):
        return e

    def amap(a):
        if a.kind == "sym":
            return b.get(a.args[0], Expr({((a, 1),): GaussQ(1)}))
        if not (a.free & b.keys()):
            return Expr({((a, 1),): GaussQ(1)})
        args = [substitute(x, bindings) for x in a.args]
        if a.kind == "log":
            return log(args[0])
        if a.kind == "exp":
            return exp(args[0])
        if a.kind == "abs":
            return modulus(args[0])
        if a.kind == "inv":
            return power(args[0], -1)
        return power(args[0], args[1])

    return _rebuild(e, amap)


def canonicalize(e):
    """Re-run every smart constructor; idempotent on canonical input."""
    return _rebuild(_coerce(e), _recanon_atom)


def _recanon_atom(a):
    if a.kind == "sym":
        return Expr({((a, 1),): GaussQ(1)})
    args = [canonicalize(x) for x in a.args]
    return {"log": lambda: log(args[0]), "exp": lambda: exp(args[0]),
            "abs": lambda: modulus(args[0]), "inv": lambda: power(args[0], -1),
            "pow": lambda: power(args[0], args[1])}[a.kind]()


def _symbol_name(s):
    if isinstance(s, str):
        return s
    if isinstance(s, Expr):
        st = s.single_term()
        if st is not None and len(st[0]) == 1 and st[0][0][0].kind == "sym" and st[0][0][1] == 1:
            return st[0][0][0].args[0]
    raise TypeError(f"not a symbol: {s!r}")


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------


def _atom_expr(a, n=1):
    return Expr({((a, n),): GaussQ(1)})


def _datom(a, name):
    cached = a._dcache.get(name)
    if cached is not None:
        return cached
    if name not in a.free:
        d = Expr()
    elif a.kind == "sym":
        d = const(1)
    else:
        b = a.args[0]
        db = differentiate(b, name)
        if a.kind == "log":
            d = db * power(b, -1)
        elif a.kind == "exp":
            d = _atom_expr(a) * db
        elif a.kind == "inv":
            d = -(_atom_expr(a, 2) * db)
        elif a.kind == "abs":
            d = (conjugate(b) * db + b * conjugate(db)) * power(_atom_expr(a), -1) * Fraction(1, 2)
        else:  # pow
            ex = a.args[1]
            dex = differentiate(ex, name)
            inner = ex * db * power(b, -1)
            if not dex.is_zero():
                inner = inner + dex * log(b)
            d = _atom_expr(a) * inner
    a._dcache[name] = d
    return d


def differentiate(e, symbol):
    """Exact partial derivative with respect to a symbol."""
    e = _coerce(e)
    name = _symbol_name(symbol)
    if name not in e.free_symbols:
        return Expr()
    out = Expr()
    for mono, c in e.terms.items():
        for i, (a, n) in enumerate(mono):
            if name not in a.free:
                continue
            da = _datom(a, name)
            if da.is_zero():
                continue
            rest = list(mono)
            if n == 1:
                del rest[i]
            else:
                rest[i] = (a, n - 1)
            out = out + _mul(Expr({tuple(rest): c * n}), da)
    return out


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _point_values(at):
    vals = {}
    for k, v in at.items():
        vals[_symbol_name(k)] = v
    return vals


def evaluate(e, at):
    """Numeric value of ``e`` at a point (scalars or broadcastable arrays).

    Uses principal branches: ``log`` and non-integer powers take
    ``arg in (-pi, pi]``.
    """
    e = _coerce(e)
    vals = _point_values(at)
    missing = e.free_symbols - vals.keys()
    if missing:
        raise UnboundSymbol(", ".join(sorted(missing)))
    num = {k: np.asarray(v, dtype=complex) if not isinstance(v, GaussQ) else np.asarray(complex(v))
           for k, v in vals.items() if k in e.free_symbols}
    cache = {}
    return _eval(e, num, cache, at)


def _eval(e, num, cache, at):
    total = None
    for mono, c in e.terms.items():
        t = complex(c)
        for a, n in mono:
            v = cache.get(a)
            if v is None:
                v = cache[a] = _eval_atom(a, num, cache, at)
            if n < 0:
                if np.any(v == 0):
                    raise DomainError(f"division by zero in {a!r}", at)
                t = t * v ** n if n != -1 else t / v
            else:
                t = t * (v if n == 1 else v ** n)
        total = t if total is None else total + t
    if total is None:
        return complex(0)
    if isinstance(total, np.ndarray) and total.ndim == 0:
        return complex(total)
    return total


def _eval_atom(a, num, cache, at):
    k = a.kind
    if k == "sym":
        return num[a.args[0]]
    b = _eval(a.args[0], num, cache, at)
    if k == "exp":
        return np.exp(b)
    if k == "abs":
        return np.abs(b) + 0j
    if k == "log":
        if np.any(b == 0):
            raise DomainError(f"log(0) in {a!r}", at)
        return np.log(np.asarray(b, dtype=complex))
    if k == "inv":
        if np.any(b == 0):
            raise DomainError(f"division by zero in {a!r}", at)
        return 1.0 / b
    ex = _eval(a.args[1], num, cache, at)
    b = np.asarray(b, dtype=complex)
    zero = b == 0
    if np.any(zero):
        if np.any(np.real(np.broadcast_to(ex, b.shape)[zero]) <= 0):
            raise DomainError(f"0 to a non-positive power in {a!r}", at)
        safe = np.where(zero, 1.0, b)
        return np.where(zero, 0.0, np.exp(ex * np.log(safe)))
    return np.exp(ex * np.log(b))


def evaluate_exact(e, at):
    """Exact Gaussian-rational value; needs exact coefficients, exact point
    values and no transcendental atoms."""
    e = _coerce(e)
    vals = {k: as_number(v) for k, v in _point_values(at).items()}
    missing = e.free_symbols - vals.keys()
    if missing:
        raise UnboundSymbol(", ".join(sorted(missing)))
    total = GaussQ(0)
    for mono, c in e.terms.items():
        if not is_exact(c):
            raise ValueError("inexact coefficient")
        t = c
        for a, n in mono:
            if a.kind == "sym":
                v = vals[a.args[0]]
            elif a.kind == "inv":
                v = evaluate_exact(a.args[0], at)
                if not v:
                    raise DomainError(f"division by zero in {a!r}", at)
                v = v.inverse()
            else:
                raise ValueError(f"transcendental atom {a!r}")
            if not is_exact(v):
                raise ValueError("inexact point value")
            if n < 0 and not v:
                raise DomainError(f"division by zero in {a!r}", at)
            t = t * v ** n
        total = total + t
    return total


# ---------------------------------------------------------------------------
# sampled equality
# ---------------------------------------------------------------------------


def sample_points(domain, n, seed=0):
    """``n`` seeded points in a box ``{symbol: (lo, hi)}``; point ``i``
    depends only on ``(seed, i)``."""
    names = [_symbol_name(k) for k in domain]
    bounds = list(domain.values())
    cols = {k: np.empty(n) for k in names}
    for i in range(n):
        rng = np.random.default_rng([seed, i])
        u = rng.random(len(names))
        for j, k in enumerate(names):
            lo, hi = bounds[j]
            cols[k][i] = lo + (hi - lo) * u[j]
    return cols


def equivalent_on_samples(a, b, domain, n=32, tol=1e-10, seed=0):
    """Compare two expressions at ``n`` seeded points of ``domain``.

    Returns ``(True, None)`` or ``(False, (point, value_a, value_b))`` for
    the first failing point.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pts = sample_points(domain, n, seed)
    va = np.broadcast_to(evaluate(a, pts), (n,))
    vb = np.broadcast_to(evaluate(b, pts), (n,))
    bad = np.nonzero(~(np.abs(va - vb) <= tol))[0]
    if len(bad) == 0:
        return True, None
    i = int(bad[0])
    return False, ({k: float(v[i]) for k, v in pts.items()}, complex(va[i]), complex(vb[i]))


X0, X1, X2, X3 = (sym(f"x{i}") for i in range(4))
COORDS = (X0, X1, X2, X3)
COORD_NAMES = ("x0", "x1", "x2", "x3")
P, Q = sym("p"), sym("q")
HBAR, BETA, RR, T = sym("hbar"), sym("beta"), sym("r"), sym("t")
PARAM_NAMES = ("hbar", "beta", "r", "t")
