"""Tests for exact fields and matrices."""

from fractions import Fraction

import pytest

from quiverar.errors import InputError, ShapeError
from quiverar.linalg.fields import QQ, PrimeField, field_from_descriptor
from quiverar.linalg.matrix import ColumnSpace, Matrix, QuotientSpace


def test_field_descriptors():
    assert field_from_descriptor("Q") is QQ
    assert field_from_descriptor("F 5") == PrimeField(5)
    assert field_from_descriptor("F 7").descriptor() == "F 7"
    with pytest.raises(InputError):
        field_from_descriptor("F 6")
    with pytest.raises(InputError):
        field_from_descriptor("R")


def test_prime_field_arithmetic():
    f = PrimeField(5)
    assert f.coerce(-1) == 4
    assert f.coerce(Fraction(1, 2)) == 3
    assert f.reciprocal(2) == 3
    assert f.multiply(3, 4) == 2
    with pytest.raises(InputError):
        f.coerce(Fraction(1, 5))


def test_rational_coercion():
    assert QQ.coerce("3/4") == Fraction(3, 4)
    assert QQ.coerce(2) == Fraction(2)
    with pytest.raises(InputError):
        QQ.coerce(True)


def test_rref_and_rank():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    ech = m.rref()
    assert ech.rank == 2
    assert ech.pivots == (0, 1)
    assert m.rank() == 2


def test_kernel_basis_is_annihilated():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6]])
    kernel = m.kernel_basis()
    assert kernel.shape == (3, 2)
    assert (m @ kernel).is_zero()


def test_kernel_of_injective_matrix_is_empty():
    m = Matrix.identity(QQ, 3)
    assert m.kernel_basis().shape == (3, 0)


def test_solve_particular_and_inconsistent():
    a = Matrix.from_rows(QQ, [[1, 1], [1, -1]])
    b = Matrix.column_vector(QQ, [3, 1])
    solution = a.solve(b)
    assert solution is not None
    assert solution.particular.column(0) == (Fraction(2), Fraction(1))
    assert solution.kernel.cols == 0

    singular = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
    assert singular.solve(Matrix.column_vector(QQ, [1, 2])) is None


def test_solve_shape_mismatch():
    with pytest.raises(ShapeError):
        Matrix.identity(QQ, 2).solve(Matrix.column_vector(QQ, [1, 2, 3]))


def test_inverse_over_prime_field():
    f = PrimeField(3)
    m = Matrix.from_rows(f, [[1, 2], [0, 1]])
    assert m @ m.inverse() == Matrix.identity(f, 2)
    with pytest.raises(ZeroDivisionError):
        Matrix.from_rows(f, [[1, 2], [2, 1]]).inverse()


def test_stacking():
    a = Matrix.identity(QQ, 2)
    b = Matrix.zeros(QQ, 2, 1)
    assert Matrix.hstack(QQ, 2, [a, b]).shape == (2, 3)
    assert Matrix.vstack(QQ, 2, [a, a]).shape == (4, 2)
    assert Matrix.hstack(QQ, 0, []).shape == (0, 0)


def test_column_space_coordinates():
    basis = Matrix.from_columns(QQ, [[1, 0, 1], [0, 1, 1]], 3)
    space = ColumnSpace(basis)
    assert space.dimension == 2
    coords = space.coordinates(Matrix.column_vector(QQ, [2, 3, 5]))
    assert coords is not None
    assert coords.column(0) == (Fraction(2), Fraction(3))
    assert space.coordinates(Matrix.column_vector(QQ, [1, 0, 0])) is None


def test_quotient_space():
    sub = Matrix.from_columns(QQ, [[1, 1, 0], [2, 2, 0]], 3)
    quotient = QuotientSpace(QQ, 3, sub)
    assert quotient.dimension == 2
    assert quotient.contains(Matrix.column_vector(QQ, [3, 3, 0]))
    assert not quotient.contains(Matrix.column_vector(QQ, [1, 0, 0]))
    assert (quotient.projection @ quotient.lift) == Matrix.identity(QQ, 2)
