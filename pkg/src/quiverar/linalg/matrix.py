"""
Dense immutable matrices over exact fields.

This module implements row reduction, kernels, linear solving and the small
block algebra every other component of quiverar is built on.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from quiverar.errors import ShapeError
from quiverar.linalg.fields import Field, Scalar

logger = logging.getLogger(__name__)


class Matrix:
    """An immutable ``rows x cols`` matrix with entries in ``field``.

    Zero-row and zero-column matrices are legal and behave as zero maps.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, rows: int, cols: int, data: Tuple[Tuple[Scalar, ...], ...]):
        """Initialize the matrix from already-coerced row tuples.

        Args:
            field: The scalar field.
            rows: Number of rows.
            cols: Number of columns.
            data: Row tuples of field elements.
        """
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative matrix shape {rows}x{cols}")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError(f"entries do not match shape {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(
        cls, field: Field, rows: Sequence[Sequence[object]], cols: Optional[int] = None
    ) -> "Matrix":
        """Build a matrix from nested sequences, coercing every entry."""
        data = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[object]], rows: int) -> "Matrix":
        """Build a matrix whose columns are the given vectors."""
        if any(len(c) != rows for c in columns):
            raise ShapeError(f"columns must all have length {rows}")
        data = tuple(tuple(field.coerce(c[i]) for c in columns) for i in range(rows))
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        data = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls(field, n, n, data)

    @classmethod
    def column_vector(cls, field: Field, values: Sequence[object]) -> "Matrix":
        return cls.from_columns(field, [values], len(values))

    @classmethod
    def hstack(cls, field: Field, rows: int, blocks: Iterable["Matrix"]) -> "Matrix":
        """Concatenate blocks side by side; ``rows`` fixes the shape when ``blocks`` is empty."""
        blocks = list(blocks)
        for b in blocks:
            if b.rows != rows:
                raise ShapeError(f"hstack: block has {b.rows} rows, expected {rows}")
        data = tuple(tuple(v for b in blocks for v in b._data[i]) for i in range(rows))
        return cls(field, rows, sum(b.cols for b in blocks), data)

    @classmethod
    def vstack(cls, field: Field, cols: int, blocks: Iterable["Matrix"]) -> "Matrix":
        """Stack blocks vertically; ``cols`` fixes the shape when ``blocks`` is empty."""
        blocks = list(blocks)
        for b in blocks:
            if b.cols != cols:
                raise ShapeError(f"vstack: block has {b.cols} columns, expected {cols}")
        data = tuple(row for b in blocks for row in b._data)
        return cls(field, len(data), cols, data)

    @classmethod
    def block_diagonal(cls, field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = field.zero()
        data: List[Tuple[Scalar, ...]] = []
        offset = 0
        for b in blocks:
            for row in b._data:
                data.append((z,) * offset + row + (z,) * (cols - offset - b.cols))
            offset += b.cols
        return cls(field, rows, cols, tuple(data))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self._data[i]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> List[Tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> List[List[Scalar]]:
        return [list(r) for r in self._data]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self._data)
        return f"Matrix({self.rows}x{self.cols}, [{body}])"

    def is_zero(self) -> bool:
        return all(v == 0 for r in self._data for v in r)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        data = tuple(
            tuple(f.add(a, b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return Matrix(f, self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        data = tuple(
            tuple(f.subtract(a, b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return Matrix(f, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        f = self.field
        data = tuple(tuple(f.negate(a) for a in r) for r in self._data)
        return Matrix(f, self.rows, self.cols, data)

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(
            f, self.rows, self.cols, tuple(tuple(f.multiply(c, a) for a in r) for r in self._data)
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        other_cols = other.columns()
        data = tuple(tuple(f.dot(r, c) for c in other_cols) for r in self._data)
        return Matrix(f, self.rows, other.cols, data)

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        data = tuple(tuple(r[j] for r in self._data) for j in range(self.cols))
        return Matrix(self.field, self.cols, self.rows, data)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        data = tuple(tuple(self._data[i][j] for j in col_indices) for i in row_indices)
        return Matrix(self.field, len(row_indices), len(col_indices), data)

    def select_rows(self, row_indices: Sequence[int]) -> "Matrix":
        return self.submatrix(row_indices, range(self.cols))

    def select_columns(self, col_indices: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.rows), col_indices)

    def flatten(self) -> Tuple[Scalar, ...]:
        """Entries in row-major order."""
        return tuple(v for r in self._data for v in r)

    def rref(self) -> "RowEchelon":
        """Reduced row echelon form.

        Pivots are chosen by scanning columns left to right and taking the first
        row at or below the current one with a nonzero entry.
        """
        f = self.field
        m = [list(r) for r in self._data]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pr = next((i for i in range(r, self.rows) if not f.is_zero(m[i][c])), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = f.reciprocal(m[r][c])
            m[r] = [f.multiply(inv, v) for v in m[r]]
            pivot_row = m[r]
            for i in range(self.rows):
                if i != r and not f.is_zero(m[i][c]):
                    factor = m[i][c]
                    m[i] = [f.subtract(a, f.multiply(factor, b)) for a, b in zip(m[i], pivot_row)]
            pivots.append(c)
            r += 1
        reduced = Matrix(f, self.rows, self.cols, tuple(tuple(row) for row in m))
        return RowEchelon(rank=r, pivots=tuple(pivots), reduced=reduced)

    def rank(self) -> int:
        return self.rref().rank

    def kernel_basis(self) -> "Matrix":
        """Columns form a basis of the null space, one per free column in order."""
        f = self.field
        ech = self.rref()
        pivot_set = set(ech.pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        vectors = []
        for j in free:
            v = [f.zero()] * self.cols
            v[j] = f.one()
            for i, pc in enumerate(ech.pivots):
                v[pc] = f.negate(ech.reduced[i, j])
            vectors.append(v)
        return Matrix.from_columns(f, vectors, self.cols)

    def column_space_basis(self) -> "Matrix":
        """The pivot columns of this matrix, a basis of its column space."""
        return self.select_columns(self.rref().pivots)

    def solve(self, b: "Matrix") -> Optional["Solution"]:
        """Solve ``self @ x = b`` for every column of ``b``.

        Args:
            b: Right-hand sides with the same number of rows as ``self``.

        Returns:
            A particular solution (free variables set to zero) together with the
            kernel basis, or None when some column of ``b`` is outside the column space.
        """
        if b.rows != self.rows:
            raise ShapeError(f"solve: right-hand side has {b.rows} rows, expected {self.rows}")
        f = self.field
        augmented = Matrix.hstack(f, self.rows, [self, b])
        ech = augmented.rref()
        if any(p >= self.cols for p in ech.pivots):
            return None
        x = [[f.zero()] * b.cols for _ in range(self.cols)]
        for i, pc in enumerate(ech.pivots):
            for k in range(b.cols):
                x[pc][k] = ech.reduced[i, self.cols + k]
        particular = Matrix.from_rows(f, x, b.cols)
        return Solution(particular=particular, kernel=self.kernel_basis())

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        solution = self.solve(Matrix.identity(self.field, self.rows))
        if solution is None:
            raise ZeroDivisionError("matrix is singular")
        return solution.particular

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


@dataclass(frozen=True)
class RowEchelon:
    """Result of ``Matrix.rref``."""

    rank: int
    pivots: Tuple[int, ...]
    reduced: Matrix


@dataclass(frozen=True)
class Solution:
    """Result of ``Matrix.solve``: one particular solution plus the homogeneous kernel."""

    particular: Matrix
    kernel: Matrix


class ColumnSpace:
    """Coordinates with respect to a fixed set of independent columns.

    The basis is inverted once on a set of independent rows, so repeated
    coordinate queries cost one small matrix product each.
    """

    def __init__(self, basis: Matrix):
        """Initialize the coordinate system.

        Args:
            basis: A matrix with linearly independent columns.
        """
        self.basis = basis
        self.field = basis.field
        ech = basis.transpose().rref()
        if ech.rank != basis.cols:
            raise ShapeError("ColumnSpace basis columns are not independent")
        self._rows = ech.pivots
        self._inverse = basis.select_rows(self._rows).inverse()

    @property
    def dimension(self) -> int:
        return self.basis.cols

    def coordinates(self, vectors: Matrix) -> Optional[Matrix]:
        """Coordinates of each column of ``vectors``, or None if one lies outside the span."""
        if vectors.rows != self.basis.rows:
            raise ShapeError(
                f"coordinates: vectors have {vectors.rows} rows, expected {self.basis.rows}"
            )
        coords = self._inverse @ vectors.select_rows(self._rows)
        if self.basis @ coords != vectors:
            return None
        return coords

    def contains(self, vectors: Matrix) -> bool:
        return self.coordinates(vectors) is not None

    def coordinate_matrix(self) -> Matrix:
        """A left inverse of the basis supported on the chosen independent rows."""
        f = self.field
        rows = [[f.zero()] * self.basis.rows for _ in range(self.dimension)]
        for k, r in enumerate(self._rows):
            for i in range(self.dimension):
                rows[i][r] = self._inverse[i, k]
        return Matrix.from_rows(f, rows, self.basis.rows)


class QuotientSpace:
    """The quotient of ``field^n`` by the span of some columns.

    The complement is spanned by the standard basis vectors that are pivots of
    ``[sub | I]``, so quotient coordinates are canonical.
    """

    def __init__(self, field: Field, n: int, sub: Matrix):
        """Initialize the quotient.

        Args:
            field: The scalar field.
            n: Ambient dimension.
            sub: Columns spanning the subspace; they may be dependent.
        """
        if sub.rows != n:
            raise ShapeError(f"subspace vectors have {sub.rows} rows, expected {n}")
        self.field = field
        self.n = n
        self.sub_basis = sub.column_space_basis()
        k = self.sub_basis.cols
        pivots = Matrix.hstack(field, n, [self.sub_basis, Matrix.identity(field, n)]).rref().pivots
        self.complement_indices: Tuple[int, ...] = tuple(p - k for p in pivots if p >= k)
        self.lift = Matrix.identity(field, n).select_columns(self.complement_indices)
        change = Matrix.hstack(field, n, [self.sub_basis, self.lift])
        self._projection = change.inverse().select_rows(range(k, n))

    @property
    def dimension(self) -> int:
        return self.lift.cols

    @property
    def projection(self) -> Matrix:
        """The ``dimension x n`` matrix sending a vector to its quotient coordinates."""
        return self._projection

    def classes(self, vectors: Matrix) -> Matrix:
        return self._projection @ vectors

    def contains(self, vectors: Matrix) -> bool:
        """Whether every column of ``vectors`` lies in the subspace."""
        return self.classes(vectors).is_zero()
