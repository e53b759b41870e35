"""Gaussian-rational constants with silent promotion to double precision."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class GaussQ:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        if type(other) is GaussQ:
            return GaussQ(self.re + other.re, self.im + other.im)
        if isinstance(other, Rational):
            return GaussQ(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is GaussQ:
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussQ(a * c, 0)
            return GaussQ(a * c - b * d, a * d + b * c)
        if isinstance(other, Rational):
            return GaussQ(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of exact zero")
        return GaussQ(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is GaussQ:
            return self * other.inverse()
        if isinstance(other, Rational):
            return GaussQ(self.re / other, self.im / other)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        return as_number(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return self.inverse() ** (-k)
        out, base = GaussQ(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    # comparisons / conversion -------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is GaussQ:
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return not self.im and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self):
        return not self.im

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"


I = GaussQ(0, 1)
ZERO = GaussQ(0)
ONE = GaussQ(1)


def as_number(value):
    """Coerce ``value`` into the coefficient tower (GaussQ or complex)."""
    if type(value) is GaussQ:
        return value
    if isinstance(value, bool):
        return GaussQ(int(value))
    if isinstance(value, Rational):
        return GaussQ(value)
    if isinstance(value, float):
        return complex(value)
    if isinstance(value, complex):
        return value
    try:
        import numpy as np

        if isinstance(value, np.integer):
            return GaussQ(int(value))
        if isinstance(value, np.floating):
            return complex(float(value))
        if isinstance(value, np.complexfloating):
            return complex(value)
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"not a number: {value!r}")


def is_exact(value):
    return type(value) is GaussQ


def is_zero_number(value):
    return not value


def number_conjugate(value):
    if type(value) is GaussQ:
        return value.conjugate()
    return complex(value).conjugate()


def parse_number(text):
    """Parse '1/4', '0.5', '-2' into an exact number when possible."""
    text = text.strip()
    try:
        return GaussQ(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return complex(float(text))
