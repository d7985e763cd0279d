"""Dense exact matrix algebra over a FieldSpec.

Products, Gauss-Jordan inverses, the nilpotent inverse series, LU/LUP
factorisations and schedule restriction. Every routine is a pure function of
immutable matrices.
"""

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import structlog

from .exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    NotAPermutationError,
    NotNilpotentError,
    SingularMatrixError,
)
from .field import FieldSpec, Raw, Scalar, random_scalar

logger = structlog.get_logger(__name__)


class Matrix:
    """Immutable dense row-major matrix over one field."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable[Any]], ncols: int | None = None):
        """Build a matrix, coercing every entry into ``field``.

        Args:
            field: Field of the entries
            rows: Row-major entries (ints, Fractions, literal strings or Scalars)
            ncols: Column count, required only when there are no rows
        """
        coerced = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        width = len(coerced[0]) if coerced else (ncols or 0)
        if any(len(row) != width for row in coerced):
            raise DimensionMismatchError("Rows have different lengths")
        if ncols is not None and ncols != width:
            raise DimensionMismatchError(f"Expected {ncols} columns, got {width}")
        self._set(field, coerced, width)

    def _set(self, field: FieldSpec, rows: tuple[tuple[Raw, ...], ...], ncols: int) -> None:
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_rows", rows)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field: FieldSpec, rows: Iterable[Iterable[Raw]], ncols: int) -> "Matrix":
        """Wrap already-canonical entries without coercion."""
        m = cls.__new__(cls)
        m._set(field, tuple(tuple(row) for row in rows), ncols)
        return m

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        zero, one = field.zero, field.one
        return cls._raw(field, ((one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec) -> "Matrix":
        zero = field.zero
        return cls._raw(field, ((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diagonal(cls, values: Sequence[Any], field: FieldSpec) -> "Matrix":
        n = len(values)
        vals = [field.coerce(v) for v in values]
        zero = field.zero
        return cls._raw(
            field, ((vals[i] if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_literals(cls, literals: Sequence[Sequence[Any]], field: FieldSpec) -> "Matrix":
        """Parse the JSON array-of-arrays form."""
        return cls(field, ([field.parse(x) for x in row] for row in literals))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def rows(self) -> tuple[tuple[Raw, ...], ...]:
        return self._rows

    def __getitem__(self, index: tuple[int, int]) -> Raw:
        i, j = index
        return self._rows[i][j]

    def scalar(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self._rows[i][j])

    def row(self, i: int) -> tuple[Raw, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Raw, ...]:
        return tuple(row[j] for row in self._rows)

    def diag(self) -> tuple[Raw, ...]:
        return tuple(self._rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self._rows))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_literals()})"

    def __str__(self) -> str:
        return self.to_pretty()

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"Cannot combine {self.field} with {other.field}")
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        add = self.field.add
        return Matrix._raw(
            self.field,
            ((add(x, y) for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        sub = self.field.sub
        return Matrix._raw(
            self.field,
            ((sub(x, y) for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._raw(self.field, ((neg(x) for x in r) for r in self._rows), self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale(self, c: Any) -> "Matrix":
        f = self.field
        k = f.coerce(c)
        return Matrix._raw(f, ((f.mul(k, x) for x in r) for r in self._rows), self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, (self.column(j) for j in range(self.ncols)), self.nrows)

    def map_entries(self, fn: Any) -> "Matrix":
        """Apply ``fn(i, j, value)`` to every entry; the result is coerced."""
        f = self.field
        return Matrix._raw(
            f,
            ((f.coerce(fn(i, j, x)) for j, x in enumerate(r)) for i, r in enumerate(self._rows)),
            self.ncols,
        )

    def diagonal_part(self) -> "Matrix":
        zero = self.field.zero
        return self.map_entries(lambda i, j, x: x if i == j else zero)

    def off_diagonal_part(self) -> "Matrix":
        zero = self.field.zero
        return self.map_entries(lambda i, j, x: zero if i == j else x)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return Matrix._raw(
            self.field, ((self._rows[i][j] for j in cols) for i in rows), len(cols)
        )

    def permute_rows(self, order: Sequence[int]) -> "Matrix":
        """Row i of the result is row ``order[i]`` of this matrix."""
        return Matrix._raw(self.field, (self._rows[k] for k in order), self.ncols)

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("Only square matrices have powers")
        result = Matrix.identity(self.nrows, self.field)
        for _ in range(k):
            result = mat_mul(result, self)
        return result

    def apply(self, vector: Sequence[Any]) -> tuple[Raw, ...]:
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise DimensionMismatchError(f"Vector length {len(vector)} != {self.ncols}")
        f = self.field
        vec = [f.coerce(v) for v in vector]
        out = []
        for row in self._rows:
            acc = f.zero
            for x, y in zip(row, vec):
                acc = f.add(acc, f.mul(x, y))
            out.append(acc)
        return tuple(out)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.nrows, self.field)

    def is_upper_triangular(self, strict: bool = False) -> bool:
        return all(
            x == 0
            for i, row in enumerate(self._rows)
            for j, x in enumerate(row)
            if j < i or (strict and i == j)
        )

    def is_lower_triangular(self, strict: bool = False) -> bool:
        return all(
            x == 0
            for i, row in enumerate(self._rows)
            for j, x in enumerate(row)
            if j > i or (strict and i == j)
        )

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    # -- rendering --------------------------------------------------------

    def to_literals(self) -> list[list[int | str]]:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self._rows]

    def to_pretty(self) -> str:
        cells = [[self.field.pretty(x) for x in row] for row in self._rows]
        if not cells:
            return "[]"
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product.

    Raises:
        FieldMismatchError: If the matrices live in different fields
        DimensionMismatchError: If a.ncols != b.nrows
    """
    if a.field != b.field:
        raise FieldMismatchError(f"Cannot multiply {a.field} by {b.field}")
    if a.ncols != b.nrows:
        raise DimensionMismatchError(f"Cannot multiply {a.shape} by {b.shape}")
    f = a.field
    cols = [b.column(j) for j in range(b.ncols)]
    if f.p is not None:
        p = f.p
        rows = (
            (sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a.rows
        )
    else:
        zero = f.zero
        rows = (
            (sum((x * y for x, y in zip(row, col)), zero) for col in cols) for row in a.rows
        )
    return Matrix._raw(f, rows, b.ncols)


def mat_inv(a: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan elimination with first-non-zero pivoting.

    Raises:
        DimensionMismatchError: If ``a`` is not square
        SingularMatrixError: If ``a`` has no inverse
    """
    if not a.is_square:
        raise DimensionMismatchError(f"Cannot invert a {a.shape} matrix")
    f = a.field
    n = a.nrows
    work = [list(row) for row in a.rows]
    inv = [list(row) for row in Matrix.identity(n, f).rows]

    for i in range(n):
        pivot_row = next((k for k in range(i, n) if work[k][i] != 0), None)
        if pivot_row is None:
            logger.debug("Zero column during inversion", column=i, size=n)
            raise SingularMatrixError(f"Matrix is singular (no pivot in column {i})")
        if pivot_row != i:
            work[i], work[pivot_row] = work[pivot_row], work[i]
            inv[i], inv[pivot_row] = inv[pivot_row], inv[i]

        scale = f.inv(work[i][i])
        work[i] = [f.mul(x, scale) for x in work[i]]
        inv[i] = [f.mul(x, scale) for x in inv[i]]

        for j in range(n):
            if j == i or work[j][i] == 0:
                continue
            d = work[j][i]
            work[j] = [f.sub(t, f.mul(r, d)) for t, r in zip(work[j], work[i])]
            inv[j] = [f.sub(t, f.mul(r, d)) for t, r in zip(inv[j], inv[i])]

    return Matrix._raw(f, inv, n)


def order_positions(order: Sequence[int], n: int) -> list[int]:
    """Position of every index 0..n-1 in a permutation.

    Raises:
        NotAPermutationError: If ``order`` is not a permutation of 0..n-1
    """
    if len(order) != n or sorted(order) != list(range(n)):
        raise NotAPermutationError(f"{list(order)} is not a permutation of 0..{n - 1}")
    positions = [0] * n
    for pos, v in enumerate(order):
        positions[v] = pos
    return positions


def restrict_after(t: Matrix, order: Sequence[int]) -> Matrix:
    """Keep entry (i, j) only when index i appears strictly after j in ``order``.

    Args:
        t: Square n x n matrix
        order: Permutation of 0..n-1

    Returns:
        T restricted to the "appears after" pattern; the diagonal is always zero
    """
    if not t.is_square:
        raise DimensionMismatchError(f"Schedule restriction needs a square matrix, got {t.shape}")
    pos = order_positions(order, t.nrows)
    zero = t.field.zero
    return Matrix._raw(
        t.field,
        (
            (x if pos[i] > pos[j] else zero for j, x in enumerate(row))
            for i, row in enumerate(t.rows)
        ),
        t.ncols,
    )


def is_nilpotent(n_mat: Matrix) -> bool:
    """True when N^size vanishes."""
    if not n_mat.is_square:
        return False
    return n_mat.power(n_mat.nrows).is_zero()


def nilpotent_inverse_series(n_mat: Matrix) -> Matrix:
    """(I - N)^{-1} as the finite sum I + N + ... + N^{size-1}.

    Raises:
        NotNilpotentError: If N^size is not zero
    """
    if not n_mat.is_square:
        raise DimensionMismatchError(f"Nilpotent series needs a square matrix, got {n_mat.shape}")
    size = n_mat.nrows
    total = Matrix.identity(size, n_mat.field)
    term = total
    for _ in range(1, size):
        term = mat_mul(term, n_mat)
        total = total + term
    if not mat_mul(term, n_mat).is_zero():
        raise NotNilpotentError(f"N^{size} is not zero")
    return total


@dataclass(frozen=True)
class LUFactors:
    """P*T = L*U with L unit lower triangular and U upper triangular.

    ``permutation[i]`` is the row of T that becomes row i of P*T.
    """

    lower: Matrix
    upper: Matrix
    permutation: tuple[int, ...]

    @property
    def is_pivot_free(self) -> bool:
        return self.permutation == tuple(range(len(self.permutation)))

    def permutation_matrix(self) -> Matrix:
        f = self.lower.field
        n = len(self.permutation)
        return Matrix._raw(
            f,
            ((f.one if j == self.permutation[i] else f.zero for j in range(n)) for i in range(n)),
            n,
        )

    def reconstructs(self, t: Matrix) -> bool:
        """True when P*T == L*U exactly."""
        return t.permute_rows(self.permutation) == mat_mul(self.lower, self.upper)


@dataclass(frozen=True)
class NoLU:
    """Outcome of an LU attempt that hit a zero pivot with a non-zero below it."""

    pivot_index: int
    permutation_hint: tuple[int, ...]

    @property
    def reason(self) -> str:
        return (
            f"zero pivot at position {self.pivot_index} with a non-zero entry below; "
            f"rows reordered as {list(self.permutation_hint)} admit an LU decomposition"
        )


def lu_decompose(t: Matrix) -> LUFactors | NoLU:
    """Doolittle LU without pivoting.

    A zero pivot whose column is already zero below it is skipped (U keeps the
    zero diagonal entry); a zero pivot with a non-zero below yields ``NoLU``.
    """
    if not t.is_square:
        raise DimensionMismatchError(f"LU needs a square matrix, got {t.shape}")
    f = t.field
    n = t.nrows
    upper = [list(row) for row in t.rows]
    lower = [list(row) for row in Matrix.identity(n, f).rows]

    for k in range(n):
        pivot = upper[k][k]
        if pivot == 0:
            if any(upper[i][k] != 0 for i in range(k + 1, n)):
                hint = lup_decompose(t).permutation
                logger.debug("No LU decomposition", pivot_index=k)
                return NoLU(pivot_index=k, permutation_hint=hint)
            continue
        inv = f.inv(pivot)
        for i in range(k + 1, n):
            if upper[i][k] == 0:
                continue
            factor = f.mul(upper[i][k], inv)
            lower[i][k] = factor
            upper[i] = [f.sub(u, f.mul(factor, v)) for u, v in zip(upper[i], upper[k])]

    return LUFactors(
        lower=Matrix._raw(f, lower, n),
        upper=Matrix._raw(f, upper, n),
        permutation=tuple(range(n)),
    )


def lup_decompose(t: Matrix) -> LUFactors:
    """LUP with first-non-zero partial pivoting; succeeds for every square T."""
    if not t.is_square:
        raise DimensionMismatchError(f"LUP needs a square matrix, got {t.shape}")
    f = t.field
    n = t.nrows
    upper = [list(row) for row in t.rows]
    lower = [[f.zero] * n for _ in range(n)]
    perm = list(range(n))

    for k in range(n):
        pivot_row = next((i for i in range(k, n) if upper[i][k] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != k:
            upper[k], upper[pivot_row] = upper[pivot_row], upper[k]
            perm[k], perm[pivot_row] = perm[pivot_row], perm[k]
            lower[k][:k], lower[pivot_row][:k] = lower[pivot_row][:k], lower[k][:k]
        inv = f.inv(upper[k][k])
        for i in range(k + 1, n):
            if upper[i][k] == 0:
                continue
            factor = f.mul(upper[i][k], inv)
            lower[i][k] = factor
            upper[i] = [f.sub(u, f.mul(factor, v)) for u, v in zip(upper[i], upper[k])]

    for i in range(n):
        lower[i][i] = f.one
    return LUFactors(
        lower=Matrix._raw(f, lower, n),
        upper=Matrix._raw(f, upper, n),
        permutation=tuple(perm),
    )


def nullspace_basis(t: Matrix) -> list[tuple[Raw, ...]]:
    """Basis of {x : T x = 0} from the reduced row echelon form."""
    f = t.field
    work = [list(row) for row in t.rows]
    pivots: list[int] = []
    r = 0
    for c in range(t.ncols):
        pivot_row = next((i for i in range(r, t.nrows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        scale = f.inv(work[r][c])
        work[r] = [f.mul(x, scale) for x in work[r]]
        for i in range(t.nrows):
            if i != r and work[i][c] != 0:
                d = work[i][c]
                work[i] = [f.sub(x, f.mul(y, d)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == t.nrows:
            break

    basis = []
    for free in (c for c in range(t.ncols) if c not in pivots):
        vec = [f.zero] * t.ncols
        vec[free] = f.one
        for row_idx, pc in enumerate(pivots):
            vec[pc] = f.neg(work[row_idx][free])
        basis.append(tuple(vec))
    return basis


def random_matrix(
    rng: random.Random,
    field: FieldSpec,
    nrows: int,
    ncols: int | None = None,
    support: Any = None,
) -> Matrix:
    """Random matrix; ``support(i, j)`` returning False forces a zero entry."""
    ncols = nrows if ncols is None else ncols
    zero = field.zero
    return Matrix._raw(
        field,
        (
            [
                random_scalar(rng, field) if support is None or support(i, j) else zero
                for j in range(ncols)
            ]
            for i in range(nrows)
        ),
        ncols,
    )
