"""2x2 matrix fields and the coefficient algebras forms can carry."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .expr import Expr, _coerce, conjugate, differentiate, evaluate
from .numbers import GaussQ
from .phase import PhasePoly, moyal_bracket, star

__all__ = [
    "MatrixField",
    "pauli",
    "su2_generator",
    "SIGMA3",
    "RAISE",
    "ScalarAlgebra",
    "MatrixAlgebra",
    "MoyalAlgebra",
    "SCALAR",
    "MATRIX",
    "MOYAL",
    "algebra_of",
    "AlgebraMismatch",
    "leaves",
]


class AlgebraMismatch(TypeError):
    pass


class MatrixField:
    """2x2 matrix with Expr entries."""

    __slots__ = ("m",)

    def __init__(self, rows):
        self.m = tuple(tuple(_coerce(x) for x in row) for row in rows)

    @classmethod
    def zero(cls):
        return cls(((0, 0), (0, 0)))

    @classmethod
    def identity(cls):
        return cls(((1, 0), (0, 1)))

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def __add__(self, other):
        if not isinstance(other, MatrixField):
            return NotImplemented
        return MatrixField([[self.m[i][j] + other.m[i][j] for j in range(2)] for i in range(2)])

    def __neg__(self):
        return MatrixField([[-x for x in row] for row in self.m])

    def __sub__(self, other):
        if not isinstance(other, MatrixField):
            return NotImplemented
        return self + (-other)

    def __mul__(self, s):
        """Scalar action by an Expr or number."""
        if isinstance(s, (MatrixField, PhasePoly)):
            return NotImplemented
        s = _coerce(s)
        if s is None:
            return NotImplemented
        return MatrixField([[x * s for x in row] for row in self.m])

    __rmul__ = __mul__

    def __matmul__(self, other):
        a, b = self.m, other.m
        return MatrixField(
            [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]
        )

    def __eq__(self, other):
        return isinstance(other, MatrixField) and self.m == other.m

    def __hash__(self):
        return hash(tuple(str(x) for row in self.m for x in row))

    def is_zero(self):
        return all(x.is_zero() for row in self.m for x in row)

    def diff(self, symbol):
        return MatrixField([[differentiate(x, symbol) for x in row] for row in self.m])

    def adjoint(self):
        return MatrixField([[conjugate(self.m[j][i]) for j in range(2)] for i in range(2)])

    def trace(self):
        return self.m[0][0] + self.m[1][1]

    def map_entries(self, f):
        return MatrixField([[f(x) for x in row] for row in self.m])

    def leaves(self):
        return [x for row in self.m for x in row]

    def is_antihermitian_at(self, point, tol=1e-12):
        s = self + self.adjoint()
        return all(np.all(np.abs(evaluate(x, point)) <= tol) for x in s.leaves())

    def __repr__(self):
        return f"MatrixField({[[str(x) for x in row] for row in self.m]})"


_i = GaussQ(0, 1)


def pauli(a):
    if a == 1:
        return MatrixField(((0, 1), (1, 0)))
    if a == 2:
        return MatrixField(((0, -_i), (_i, 0)))
    if a == 3:
        return MatrixField(((1, 0), (0, -1)))
    raise ValueError("pauli index must be 1, 2 or 3")


def su2_generator(a):
    """t_a = -(i/2) sigma_a; anti-hermitian with [t_1, t_2] = t_3 cyclically."""
    return pauli(a) * GaussQ(0, Fraction(-1, 2))


SIGMA3 = pauli(3)
RAISE = MatrixField(((0, 1), (0, 0)))


# ---------------------------------------------------------------------------
# coefficient algebras
# ---------------------------------------------------------------------------


class ScalarAlgebra:
    name = "scalar"

    def zero(self):
        return Expr()

    def one(self):
        return _coerce(1)

    def mul(self, a, b):
        return a * b

    def bracket(self, a, b):
        return Expr()

    def adjoint(self, a):
        return conjugate(a)

    def is_zero(self, a):
        return a.is_zero()

    def accepts(self, a):
        return isinstance(a, Expr)

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<{self.name} algebra>"


class MatrixAlgebra(ScalarAlgebra):
    name = "matrix"

    def zero(self):
        return MatrixField.zero()

    def one(self):
        return MatrixField.identity()

    def mul(self, a, b):
        return a @ b

    def bracket(self, a, b):
        return a @ b - b @ a

    def adjoint(self, a):
        return a.adjoint()

    def accepts(self, a):
        return isinstance(a, MatrixField)


class MoyalAlgebra(ScalarAlgebra):
    """Phase-space polynomials with the star product and Moyal bracket."""

    name = "moyal"

    def zero(self):
        return PhasePoly()

    def one(self):
        return PhasePoly.scalar(1)

    def mul(self, a, b):
        return star(a, b)

    def bracket(self, a, b):
        return moyal_bracket(a, b)

    def adjoint(self, a):
        return a.conjugate()

    def accepts(self, a):
        return isinstance(a, PhasePoly)


SCALAR = ScalarAlgebra()
MATRIX = MatrixAlgebra()
MOYAL = MoyalAlgebra()


def algebra_of(c):
    if isinstance(c, MatrixField):
        return MATRIX
    if isinstance(c, PhasePoly):
        return MOYAL
    if isinstance(c, Expr):
        return SCALAR
    raise AlgebraMismatch(f"no coefficient algebra for {type(c).__name__}")


def leaves(c):
    """Scalar Expr leaves of any coefficient (entries, monomial coefficients)."""
    if isinstance(c, Expr):
        return [c]
    return c.leaves()
