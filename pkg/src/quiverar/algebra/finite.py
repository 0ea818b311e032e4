"""
Finite-dimensional algebras given by structure constants.

This module provides the machinery shared by corner algebras e_xΛe_x and
endomorphism algebras: products, Fitting idempotents, the trace-form
radical and a locality certificate.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import sympy

from quiverar.errors import ShapeError, UndecidedError
from quiverar.linalg.fields import Field, Scalar
from quiverar.linalg.matrix import ColumnSpace, Matrix, QuotientSpace

logger = logging.getLogger(__name__)

Vector = Tuple[Scalar, ...]


class Locality(str, Enum):
    """Enum representing the outcome of a locality test."""
    LOCAL = "local"
    NOT_LOCAL = "not-local"
    PROBABLE = "probably-local"
    UNDECIDED = "undecided"


@dataclass
class LocalityCertificate:
    """Evidence for or against locality of a finite-dimensional algebra."""

    status: Locality
    radical: Optional[Matrix] = None
    residue_dimension: Optional[int] = None
    idempotent: Optional[Vector] = None
    reason: str = ""


class FiniteAlgebra:
    """A finite-dimensional associative algebra with a chosen basis.

    Elements are coordinate tuples. ``table[i][j]`` is the product of basis
    elements ``i`` and ``j``.
    """

    def __init__(self, field: Field, table: Sequence[Sequence[Vector]], unit: Optional[Vector]):
        """Initialize the algebra.

        Args:
            field: The scalar field.
            table: Structure constants, ``table[i][j] = b_i * b_j``.
            unit: Coordinates of the identity, if the algebra is unital.
        """
        self.field = field
        self.dim = len(table)
        self.table = [list(row) for row in table]
        if any(len(row) != self.dim for row in self.table):
            raise ShapeError("structure constant table is not square")
        self.unit = unit

    @classmethod
    def from_products(
        cls,
        field: Field,
        dim: int,
        product: Callable[[int, int], Sequence[Scalar]],
        unit: Optional[Sequence[Scalar]],
    ) -> "FiniteAlgebra":
        table = [[tuple(product(i, j)) for j in range(dim)] for i in range(dim)]
        return cls(field, table, tuple(unit) if unit is not None else None)

    def zero(self) -> Vector:
        return (self.field.zero(),) * self.dim

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one() if k == i else self.field.zero() for k in range(self.dim))

    def add(self, u: Vector, v: Vector) -> Vector:
        return tuple(self.field.add(a, b) for a, b in zip(u, v))

    def scale(self, c: Scalar, u: Vector) -> Vector:
        return tuple(self.field.multiply(c, a) for a in u)

    def combination(self, coeffs: Sequence[Scalar], vectors: Sequence[Vector]) -> Vector:
        result = self.zero()
        for c, v in zip(coeffs, vectors):
            if not self.field.is_zero(c):
                result = self.add(result, self.scale(c, v))
        return result

    def multiply(self, u: Vector, v: Vector) -> Vector:
        f = self.field
        result = [f.zero()] * self.dim
        for i, a in enumerate(u):
            if f.is_zero(a):
                continue
            for j, b in enumerate(v):
                if f.is_zero(b):
                    continue
                ab = f.multiply(a, b)
                for k, c in enumerate(self.table[i][j]):
                    if not f.is_zero(c):
                        result[k] = f.add(result[k], f.multiply(ab, c))
        return tuple(result)

    def power(self, u: Vector, k: int) -> Vector:
        if k == 0:
            if self.unit is None:
                raise ShapeError("zeroth power in a non-unital algebra")
            return self.unit
        result = u
        for _ in range(k - 1):
            result = self.multiply(result, u)
        return result

    def is_zero(self, u: Vector) -> bool:
        return all(self.field.is_zero(a) for a in u)

    def left_matrix(self, u: Vector) -> Matrix:
        columns = [self.multiply(u, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, columns, self.dim)

    def is_nilpotent(self, u: Vector) -> bool:
        return self.is_zero(self.power(u, self.dim + 1)) if self.dim else True

    def is_invertible(self, u: Vector) -> bool:
        return self.unit is not None and self.left_matrix(u).is_invertible()

    def is_commutative(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i)
        )

    def span_products(self, left: Sequence[Vector], right: Sequence[Vector]) -> Matrix:
        """Column basis of span{u*v}."""
        products = [self.multiply(u, v) for u in left for v in right]
        if not products:
            return Matrix.zeros(self.field, self.dim, 0)
        return Matrix.from_columns(self.field, products, self.dim).column_space_basis()

    def power_chain(self, ideal: Sequence[Vector]) -> Tuple[bool, List[Vector]]:
        """Iterate I, I², I³, ... until zero or stable.

        Returns:
            (True, []) for a nilpotent ideal, else (False, echelon basis of the stable power).
        """
        current = Matrix.from_columns(self.field, list(ideal), self.dim).column_space_basis()
        while current.cols:
            nxt = self.span_products(list(ideal), current.columns())
            if nxt.cols == current.cols:
                reduced = nxt.transpose().rref()
                return False, [reduced.reduced.row(i) for i in range(reduced.rank)]
            current = nxt
        return True, []

    def fitting_idempotent(self, a: Vector) -> Optional[Vector]:
        """The idempotent of the Fitting decomposition of ``a``.

        ``b = a^dim`` acts invertibly on its image; the returned ``e`` lies in
        the non-unital subalgebra generated by ``b`` and satisfies ``e*b = b``.
        Returns None when ``a`` is nilpotent.
        """
        b = self.power(a, max(self.dim, 1))
        if self.is_zero(b):
            return None
        powers = [b]
        for _ in range(self.dim):
            powers.append(self.multiply(powers[-1], b))
        system = Matrix.from_columns(self.field, powers[1:], self.dim)
        solution = system.solve(Matrix.column_vector(self.field, b))
        if solution is None:
            raise UndecidedError("Fitting system has no solution")
        coeffs = solution.particular.column(0)
        return self.combination(coeffs, powers[:-1])

    def find_idempotent(self, candidates: Sequence[Vector]) -> Optional[Vector]:
        """A Fitting idempotent other than 0 and 1 from the first candidate that yields one."""
        for a in candidates:
            e = self.fitting_idempotent(a)
            if e is not None and e != self.unit:
                return e
        return None

    def random_elements(self, rng: random.Random, count: int) -> List[Vector]:
        return [
            tuple(self.field.random_element(rng) for _ in range(self.dim)) for _ in range(count)
        ]

    def candidates(self, rng: random.Random, attempts: int) -> List[Vector]:
        """Basis elements, their sum, then seeded random elements."""
        basis = [self.basis_vector(i) for i in range(self.dim)]
        total = self.combination([self.field.one()] * self.dim, basis)
        return basis + [total] + self.random_elements(rng, attempts)

    def trace_form_valid(self) -> bool:
        p = self.field.characteristic
        return p == 0 or p > self.dim

    def radical(self) -> Matrix:
        """Basis (columns) of the Jacobson radical via the kernel of the trace form.

        Raises:
            UndecidedError: When the characteristic is positive and at most the dimension.
        """
        if not self.trace_form_valid():
            raise UndecidedError(
                f"trace-form radical needs characteristic 0 or p > {self.dim}", self.dim
            )
        lefts = [self.left_matrix(self.basis_vector(i)) for i in range(self.dim)]
        f = self.field
        gram = [
            [self._trace(lefts[i] @ lefts[j]) for j in range(self.dim)] for i in range(self.dim)
        ]
        return Matrix.from_rows(f, gram, self.dim).kernel_basis()

    def _trace(self, m: Matrix) -> Scalar:
        total = self.field.zero()
        for i in range(m.rows):
            total = self.field.add(total, m[i, i])
        return total

    def quotient(self, ideal: Matrix) -> Tuple["FiniteAlgebra", QuotientSpace]:
        """The quotient algebra by a two-sided ideal given by spanning columns."""
        space = QuotientSpace(self.field, self.dim, ideal)
        lifts = space.lift.columns()

        def product(i: int, j: int) -> Sequence[Scalar]:
            v = self.multiply(lifts[i], lifts[j])
            return space.classes(Matrix.column_vector(self.field, v)).column(0)

        unit = None
        if self.unit is not None:
            unit = space.classes(Matrix.column_vector(self.field, self.unit)).column(0)
        return FiniteAlgebra.from_products(self.field, space.dimension, product, unit), space

    def minimal_polynomial(self, u: Vector) -> List[Scalar]:
        """Monic minimal polynomial of ``u``, coefficients lowest degree first."""
        if self.unit is None:
            raise ShapeError("minimal polynomial needs a unit")
        powers = [self.unit]
        while True:
            nxt = self.multiply(powers[-1], u)
            basis = Matrix.from_columns(self.field, powers, self.dim)
            coords = ColumnSpace(basis).coordinates(Matrix.column_vector(self.field, nxt))
            if coords is not None:
                f = self.field
                return [f.negate(c) for c in coords.column(0)] + [f.one()]
            powers.append(nxt)

    def evaluate(self, coeffs: Sequence[Scalar], u: Vector) -> Vector:
        """``sum coeffs[i] * u^i`` by Horner's rule."""
        if self.unit is None:
            raise ShapeError("polynomial evaluation needs a unit")
        result = self.zero()
        for c in reversed(coeffs):
            result = self.add(self.multiply(result, u), self.scale(c, self.unit))
        return result

    def lift_idempotent(self, approx: Vector) -> Vector:
        """Lift an idempotent modulo a nilpotent ideal by ``e -> 3e^2 - 2e^3``."""
        f = self.field
        e = approx
        for _ in range(2 * self.dim.bit_length() + 2):
            e2 = self.multiply(e, e)
            if e2 == e:
                return e
            e3 = self.multiply(e2, e)
            e = self.add(self.scale(f.coerce(3), e2), self.scale(f.coerce(-2), e3))
        return e

    def locality(
        self, rng: random.Random, attempts: int = 64, enumeration_cap: int = 4096
    ) -> LocalityCertificate:
        """Decide whether the algebra is local.

        Args:
            rng: Seeded generator for candidate elements.
            attempts: Number of random candidates tried.
            enumeration_cap: Largest field-size power enumerated exhaustively.

        Returns:
            A certificate; ``idempotent`` is set when a nontrivial idempotent was found.
        """
        if self.dim == 0:
            return LocalityCertificate(Locality.NOT_LOCAL, reason="zero algebra")
        if self.dim == 1:
            return LocalityCertificate(
                Locality.LOCAL, radical=Matrix.zeros(self.field, 1, 0), residue_dimension=1
            )
        if not self.trace_form_valid():
            return self._locality_by_enumeration(rng, attempts, enumeration_cap)
        radical = self.radical()
        residue = self.dim - radical.cols
        if residue == 1:
            return LocalityCertificate(Locality.LOCAL, radical=radical, residue_dimension=1)
        e = self.find_idempotent(self.candidates(rng, attempts))
        if e is not None:
            return LocalityCertificate(
                Locality.NOT_LOCAL, radical=radical, residue_dimension=residue, idempotent=e,
                reason="Fitting idempotent",
            )
        quotient, space = self.quotient(radical)
        if not quotient.is_commutative():
            status = Locality.NOT_LOCAL if self.field.characteristic else Locality.PROBABLE
            return LocalityCertificate(
                status, radical=radical, residue_dimension=residue,
                reason="noncommutative semisimple quotient",
            )
        for z in quotient.candidates(rng, attempts):
            verdict = quotient._field_test(z)
            if verdict is None:
                continue
            is_field, idempotent = verdict
            if is_field:
                return LocalityCertificate(
                    Locality.LOCAL, radical=radical, residue_dimension=residue,
                    reason="residue algebra is a field",
                )
            lifted = space.lift @ Matrix.column_vector(self.field, idempotent)
            e = self.lift_idempotent(lifted.column(0))
            return LocalityCertificate(
                Locality.NOT_LOCAL, radical=radical, residue_dimension=residue, idempotent=e,
                reason="reducible minimal polynomial in the residue algebra",
            )
        return LocalityCertificate(
            Locality.PROBABLE, radical=radical, residue_dimension=residue,
            reason="no primitive element found",
        )

    def _field_test(self, z: Vector) -> Optional[Tuple[bool, Optional[Vector]]]:
        """Test a commutative semisimple algebra through one element.

        Returns (True, None) when ``z`` generates a field of full dimension,
        (False, idempotent) when its minimal polynomial splits, None when inconclusive.
        """
        coeffs = self.minimal_polynomial(z)
        poly = _to_sympy(coeffs, self.field)
        if poly.is_irreducible:
            if len(coeffs) - 1 == self.dim:
                return True, None
            return None
        factors = poly.factor_list()[1]
        first = factors[0][0] ** factors[0][1]
        rest = sympy.quo(poly, first)
        _, t, _ = sympy.gcdex(first, rest)
        # t*rest is 1 modulo first and 0 modulo rest.
        selector = _from_sympy(t * rest, self.field)
        return False, self.evaluate(selector, z)

    def _locality_by_enumeration(
        self, rng: random.Random, attempts: int, enumeration_cap: int
    ) -> LocalityCertificate:
        p = self.field.characteristic
        e = self.find_idempotent(self.candidates(rng, attempts))
        if e is not None:
            return LocalityCertificate(
                Locality.NOT_LOCAL, idempotent=e, reason="Fitting idempotent"
            )
        if p ** self.dim > enumeration_cap:
            return LocalityCertificate(
                Locality.UNDECIDED,
                reason=f"F {p} is too small for the trace form and too large to enumerate",
            )
        nilpotent: List[Vector] = []
        for coords in itertools.product(range(p), repeat=self.dim):
            u = tuple(self.field.coerce(c) for c in coords)
            if self.is_nilpotent(u):
                nilpotent.append(u)
            elif not self.is_invertible(u):
                return LocalityCertificate(
                    Locality.NOT_LOCAL, idempotent=self.fitting_idempotent(u),
                    reason="element neither nilpotent nor invertible",
                )
        radical = Matrix.from_columns(self.field, nilpotent, self.dim).column_space_basis()
        return LocalityCertificate(
            Locality.LOCAL, radical=radical, residue_dimension=self.dim - radical.cols,
            reason="every element is nilpotent or invertible",
        )


_T = sympy.Symbol("t")


def _to_sympy(coeffs: Sequence[Scalar], field: Field) -> sympy.Poly:
    values = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs]
    expr = sum((v * _T**i for i, v in enumerate(values)), sympy.Integer(0))
    if field.characteristic:
        return sympy.Poly(expr, _T, modulus=field.characteristic)
    return sympy.Poly(expr, _T, domain=sympy.QQ)


def _from_sympy(poly: sympy.Poly, field: Field) -> List[Scalar]:
    coeffs = list(reversed(sympy.Poly(poly, _T).all_coeffs()))
    return [field.coerce(Fraction(int(sympy.numer(c)), int(sympy.denom(c)))) for c in coeffs]
