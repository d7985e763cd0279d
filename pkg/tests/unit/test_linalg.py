"""Unit tests for exact matrix algebra."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linsds.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    NotAPermutationError,
    NotNilpotentError,
    SingularMatrixError,
)
from linsds.field import FieldSpec
from linsds.linalg import (
    LUFactors,
    Matrix,
    NoLU,
    is_nilpotent,
    lu_decompose,
    lup_decompose,
    mat_inv,
    mat_mul,
    nilpotent_inverse_series,
    nullspace_basis,
    order_positions,
    random_matrix,
    restrict_after,
)
from tests.conftest import CIRC4_PAR

F5 = FieldSpec.prime(5)


class TestMatrix:
    """Test matrix construction and basic operations."""

    def test_entries_are_coerced(self, f3):
        """Test entries reduce into the field."""
        m = Matrix(f3, [[4, -1], [3, "5"]])
        assert m.to_literals() == [[1, 2], [0, 2]]

    def test_ragged_rows(self, f3):
        """Test rows of different lengths are rejected."""
        with pytest.raises(DimensionMismatchError):
            Matrix(f3, [[1, 2], [3]])

    def test_empty_matrix(self, q):
        """Test the 0x0 matrix."""
        m = Matrix(q, [], ncols=0)
        assert m.shape == (0, 0)
        assert m.is_identity()
        assert mat_inv(m) == m

    def test_immutable(self, f2):
        """Test attributes cannot be reassigned."""
        m = Matrix.identity(2, f2)
        with pytest.raises(AttributeError):
            m.nrows = 3

    def test_equality_and_hash(self, q):
        """Test value equality."""
        a = Matrix(q, [[1, Fraction(1, 2)]])
        b = Matrix(q, [["1/1", "1/2"]])
        assert a == b
        assert hash(a) == hash(b)
        assert a != Matrix(FieldSpec.prime(3), [[1, 2]])

    def test_arithmetic(self, q):
        """Test addition, subtraction, negation and products."""
        a = Matrix(q, [[1, 2], [3, 4]])
        b = Matrix(q, [[0, 1], [1, 0]])
        assert (a + b).to_literals() == [["1/1", "3/1"], ["4/1", "4/1"]]
        assert (a - a).is_zero()
        assert (a @ b) == Matrix(q, [[2, 1], [4, 3]])
        assert -b == b.scale(-1)
        assert a.transpose() == Matrix(q, [[1, 3], [2, 4]])

    def test_field_mismatch(self, f2, f3):
        """Test mixing fields raises."""
        with pytest.raises(FieldMismatchError):
            mat_mul(Matrix.identity(2, f2), Matrix.identity(2, f3))

    def test_shape_mismatch(self, f2):
        """Test incompatible shapes raise."""
        with pytest.raises(DimensionMismatchError):
            mat_mul(Matrix.zeros(2, 3, f2), Matrix.zeros(2, 3, f2))

    def test_apply(self, f5):
        """Test matrix-vector products."""
        m = Matrix(f5, [[1, 2], [3, 4]])
        assert m.apply([1, 1]) == (3, 2)

    def test_triangularity(self, q):
        """Test the triangular predicates."""
        u = Matrix(q, [[1, 2], [0, 3]])
        assert u.is_upper_triangular()
        assert not u.is_upper_triangular(strict=True)
        assert u.transpose().is_lower_triangular()

    def test_permute_rows(self, q):
        """Test row i of the result is row order[i]."""
        m = Matrix(q, [[1], [2], [3]])
        assert m.permute_rows([2, 0, 1]) == Matrix(q, [[3], [1], [2]])


class TestInverse:
    """Test Gauss-Jordan inversion."""

    def test_inverse_over_q(self, q):
        """Test a rational inverse."""
        a = Matrix(q, [[2, 1], [4, 3]])
        inv = mat_inv(a)
        assert inv == Matrix(q, [["3/2", "-1/2"], [-2, 1]])
        assert mat_mul(a, inv).is_identity()

    def test_inverse_needs_row_swap(self, f5):
        """Test a zero leading entry is pivoted around."""
        a = Matrix(f5, [[0, 1], [1, 0]])
        assert mat_inv(a) == a

    def test_singular(self, f2):
        """Test singular matrices raise."""
        with pytest.raises(SingularMatrixError):
            mat_inv(Matrix(f2, [[1, 1], [1, 1]]))

    def test_not_square(self, f2):
        """Test non-square matrices raise."""
        with pytest.raises(DimensionMismatchError):
            mat_inv(Matrix.zeros(2, 3, f2))

    def test_random_inverses(self, rng):
        """Test A * A^{-1} = I on random invertible matrices."""
        for _ in range(40):
            f = rng.choice([FieldSpec.prime(3), FieldSpec.rational()])
            a = random_matrix(rng, f, rng.randint(1, 5))
            try:
                inv = mat_inv(a)
            except SingularMatrixError:
                continue
            assert mat_mul(a, inv).is_identity()
            assert mat_mul(inv, a).is_identity()


class TestRestriction:
    """Test schedule restriction."""

    def test_circ4_examples(self, f2):
        """Test Circ4/Par restricted to 0123 and 3210."""
        a = Matrix(f2, CIRC4_PAR)
        assert restrict_after(a, [0, 1, 2, 3]).to_literals() == [
            [0, 0, 0, 0],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [1, 0, 1, 0],
        ]
        assert restrict_after(a, [3, 2, 1, 0]).to_literals() == [
            [0, 1, 0, 1],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
        ]

    def test_restriction_is_nilpotent(self, rng, q):
        """Test restricted matrices are nilpotent for every order."""
        for _ in range(20):
            n = rng.randint(1, 6)
            order = list(range(n))
            rng.shuffle(order)
            r = restrict_after(random_matrix(rng, q, n), order)
            assert all(x == 0 for x in r.diag())
            assert is_nilpotent(r)

    def test_bad_order(self, f2):
        """Test orders that are not permutations."""
        with pytest.raises(NotAPermutationError):
            restrict_after(Matrix.identity(3, f2), [0, 0, 1])
        with pytest.raises(NotAPermutationError):
            order_positions([0, 1], 3)


class TestNilpotentSeries:
    """Test the finite inverse series."""

    def test_circ4_series(self, f2):
        """Test (I - A_0123)^{-1} for Circ4/Par."""
        a_pi = restrict_after(Matrix(f2, CIRC4_PAR), [0, 1, 2, 3])
        assert nilpotent_inverse_series(a_pi).to_literals() == [
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 1, 1, 0],
            [0, 1, 1, 1],
        ]

    def test_matches_inverse(self, rng, q):
        """Test the series agrees with Gauss-Jordan."""
        for _ in range(20):
            n = rng.randint(1, 6)
            order = list(range(n))
            rng.shuffle(order)
            nil = restrict_after(random_matrix(rng, q, n), order)
            identity = Matrix.identity(n, q)
            assert nilpotent_inverse_series(nil) == mat_inv(identity - nil)

    def test_not_nilpotent(self, f2):
        """Test a matrix with N^n != 0."""
        with pytest.raises(NotNilpotentError):
            nilpotent_inverse_series(Matrix(f2, [[0, 1], [1, 0]]))


class TestLU:
    """Test LU and LUP factorisations."""

    def test_lu_over_q(self, q):
        """Test a pivot-free factorisation."""
        t = Matrix(q, [[2, 1], [4, 3]])
        factors = lu_decompose(t)
        assert isinstance(factors, LUFactors)
        assert factors.lower == Matrix(q, [[1, 0], [2, 1]])
        assert factors.upper == Matrix(q, [[2, 1], [0, 1]])
        assert factors.is_pivot_free
        assert factors.reconstructs(t)

    def test_no_lu(self, f5):
        """Test a zero pivot with a non-zero below."""
        outcome = lu_decompose(Matrix(f5, [[0, 1], [1, 0]]))
        assert isinstance(outcome, NoLU)
        assert outcome.pivot_index == 0
        assert outcome.permutation_hint == (1, 0)
        assert "zero pivot" in outcome.reason

    def test_skippable_zero_pivot(self, q):
        """Test a zero pivot whose column is already clear below."""
        t = Matrix(q, [[0, 1], [0, 1]])
        factors = lu_decompose(t)
        assert isinstance(factors, LUFactors)
        assert factors.reconstructs(t)

    def test_lup_always_succeeds(self, rng):
        """Test P*T = L*U on random matrices, singular ones included."""
        for _ in range(40):
            f = rng.choice([FieldSpec.prime(2), FieldSpec.prime(5), FieldSpec.rational()])
            t = random_matrix(rng, f, rng.randint(1, 5))
            factors = lup_decompose(t)
            assert factors.lower.is_lower_triangular()
            assert all(x == 1 for x in factors.lower.diag())
            assert factors.upper.is_upper_triangular()
            assert factors.reconstructs(t)
            assert mat_mul(factors.permutation_matrix(), t) == mat_mul(
                factors.lower, factors.upper
            )

    def test_lu_when_it_exists(self, rng):
        """Test unit-lower times upper products factor back exactly."""
        for _ in range(30):
            f = rng.choice([FieldSpec.prime(5), FieldSpec.rational()])
            n = rng.randint(1, 5)
            lower = random_matrix(rng, f, n, support=lambda i, j: j < i) + Matrix.identity(n, f)
            upper = random_matrix(rng, f, n, support=lambda i, j: j >= i)
            fill = [f.one if x == 0 else f.zero for x in upper.diag()]
            upper = upper + Matrix.diagonal(fill, f)
            t = mat_mul(lower, upper)
            factors = lu_decompose(t)
            assert isinstance(factors, LUFactors)
            assert factors.lower == lower
            assert factors.upper == upper


class TestNullspace:
    """Test kernel bases."""

    def test_identity_has_trivial_kernel(self, f5):
        """Test an invertible matrix."""
        assert nullspace_basis(Matrix.identity(3, f5)) == []

    def test_kernel_vectors(self, rng):
        """Test every basis vector is annihilated and rank-nullity holds."""
        for _ in range(20):
            f = FieldSpec.prime(3)
            t = random_matrix(rng, f, rng.randint(1, 5))
            basis = nullspace_basis(t)
            for vec in basis:
                assert all(x == 0 for x in t.apply(vec))
            assert len(basis) <= t.ncols


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**16), st.integers(min_value=1, max_value=4))
def test_product_is_associative(seed, n):
    """Test (AB)C = A(BC) over F_5."""
    rng = random.Random(seed)
    a, b, c = (random_matrix(rng, F5, n) for _ in range(3))
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
