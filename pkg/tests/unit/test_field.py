"""Unit tests for field arithmetic."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linsds.exceptions import (
    DivisionByZeroError,
    FieldMismatchError,
    InvalidFieldError,
    ValidationError,
)
from linsds.field import FieldKind, FieldSpec, Scalar, random_scalar, scalar_arith

F7 = FieldSpec.prime(7)
Q = FieldSpec.rational()

residues = st.integers(min_value=-50, max_value=50)
rationals = st.fractions(max_denominator=20)


class TestFieldSpec:
    """Test field construction and validation."""

    def test_prime_field(self):
        """Test building F_p for a prime."""
        f = FieldSpec.prime(5)
        assert f.kind == FieldKind.PRIME
        assert f.characteristic == 5
        assert f.order == 5
        assert f.is_prime
        assert str(f) == "F_5"

    def test_rational_field(self):
        """Test building Q."""
        assert Q.characteristic == 0
        assert Q.order is None
        assert not Q.is_prime
        assert str(Q) == "Q"

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 2**31])
    def test_rejects_bad_modulus(self, p):
        """Test non-prime and out-of-range moduli are rejected."""
        with pytest.raises(InvalidFieldError):
            FieldSpec.prime(p)

    def test_largest_prime_accepted(self):
        """Test the largest modulus below 2^31."""
        assert FieldSpec.prime(2**31 - 1).p == 2**31 - 1

    def test_equality(self):
        """Test fields compare by value."""
        assert FieldSpec.prime(3) == FieldSpec.prime(3)
        assert FieldSpec.prime(3) != FieldSpec.prime(5)
        assert FieldSpec.prime(3) != Q

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("5", FieldSpec.prime(5)),
            ("F5", FieldSpec.prime(5)),
            ("gf7", FieldSpec.prime(7)),
            ("rational", Q),
            ("Q", Q),
            ('{"prime": 3}', FieldSpec.prime(3)),
            ('"rational"', Q),
        ],
    )
    def test_from_string(self, text, expected):
        """Test command-line field spellings."""
        assert FieldSpec.from_string(text) == expected

    @pytest.mark.parametrize("text", ["", "F", "nine", "9", '{"prime": "3"}'])
    def test_from_string_rejects(self, text):
        """Test unrecognised field spellings."""
        with pytest.raises(InvalidFieldError):
            FieldSpec.from_string(text)

    def test_json_round_trip(self):
        """Test the JSON field literal."""
        assert FieldSpec.prime(5).to_json() == {"prime": 5}
        assert Q.to_json() == "rational"
        assert FieldSpec.from_json({"prime": 5}) == FieldSpec.prime(5)
        with pytest.raises(InvalidFieldError):
            FieldSpec.from_json({"prime": True})


class TestLiterals:
    """Test parsing and formatting of scalar literals."""

    def test_prime_reduces(self):
        """Test integers reduce modulo p."""
        assert F7.parse(9) == 2
        assert F7.parse(-1) == 6
        assert F7.parse("10") == 3

    def test_prime_fraction_literal(self):
        """Test a fraction literal becomes numerator times inverse denominator."""
        assert F7.parse("1/2") == 4
        with pytest.raises(DivisionByZeroError):
            F7.parse("3/7")

    def test_rational_literal(self):
        """Test rational literals."""
        assert Q.parse("3/4") == Fraction(3, 4)
        assert Q.parse(-2) == Fraction(-2)
        assert Q.format(Fraction(3, 4)) == "3/4"
        assert Q.format(Fraction(2)) == "2/1"

    @pytest.mark.parametrize("literal", ["abc", "1/0", True, 1.5, None])
    def test_invalid_literal(self, literal):
        """Test malformed literals raise ValidationError."""
        with pytest.raises(ValidationError):
            Q.parse(literal)

    def test_format_prime(self):
        """Test residues format as ints."""
        assert F7.format(F7.parse(-3)) == 4


class TestScalar:
    """Test field-tagged scalars."""

    def test_arithmetic(self):
        """Test the four operations in F_7."""
        a, b = Scalar.of(F7, 3), Scalar.of(F7, 5)
        assert (a + b).value == 1
        assert (a - b).value == 5
        assert (a * b).value == 1
        assert (a / b).value == 2
        assert (-a).value == 4
        assert a.inv().value == 5

    def test_field_mismatch(self):
        """Test combining scalars of different fields."""
        with pytest.raises(FieldMismatchError):
            Scalar.of(F7, 1) + Scalar.of(FieldSpec.prime(5), 1)

    def test_inverse_of_zero(self):
        """Test inverting zero."""
        with pytest.raises(DivisionByZeroError):
            Scalar.of(Q, 0).inv()

    def test_scalar_arith_dispatch(self):
        """Test the named-operation entry point."""
        a, b = Scalar.of(Q, Fraction(1, 2)), Scalar.of(Q, Fraction(1, 3))
        assert scalar_arith("add", a, b).value == Fraction(5, 6)
        assert scalar_arith("div", a, b).value == Fraction(3, 2)
        assert scalar_arith("neg", a).value == Fraction(-1, 2)
        with pytest.raises(ValidationError):
            scalar_arith("pow", a, b)
        with pytest.raises(ValidationError):
            scalar_arith("mul", a)

    def test_literal_and_str(self):
        """Test rendering."""
        assert Scalar.of(Q, Fraction(-1, 3)).to_literal() == "-1/3"
        assert Scalar.of(F7, 10).to_literal() == 3


class TestFieldAxioms:
    """Property tests for the field axioms."""

    @given(residues, residues, residues)
    def test_prime_ring_laws(self, a, b, c):
        """Test associativity, commutativity and distributivity in F_7."""
        x, y, z = Scalar.of(F7, a), Scalar.of(F7, b), Scalar.of(F7, c)
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert x - x == Scalar.of(F7, 0)

    @given(residues)
    def test_prime_inverse(self, a):
        """Test every non-zero residue has a multiplicative inverse."""
        x = Scalar.of(F7, a)
        if x.is_zero():
            return
        assert x * x.inv() == Scalar.of(F7, 1)

    @given(rationals, rationals, rationals)
    def test_rational_laws(self, a, b, c):
        """Test the laws over Q and exact division."""
        x, y, z = Scalar.of(Q, a), Scalar.of(Q, b), Scalar.of(Q, c)
        assert x * (y + z) == x * y + x * z
        if not y.is_zero():
            assert (x / y) * y == x


class TestRandomScalar:
    """Test random element generation."""

    def test_nonzero(self):
        """Test the nonzero flag."""
        rng = random.Random(1)
        for f in (FieldSpec.prime(2), Q):
            assert all(random_scalar(rng, f, nonzero=True) != 0 for _ in range(50))

    def test_in_range(self):
        """Test residues stay in 0..p-1."""
        rng = random.Random(2)
        assert all(0 <= random_scalar(rng, F7) < 7 for _ in range(50))
