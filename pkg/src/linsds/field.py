"""Exact scalar arithmetic over prime fields F_p and the rationals Q.

Matrices store raw canonical values (``int`` residues for F_p, ``Fraction``
for Q) and delegate arithmetic to their ``FieldSpec``; ``Scalar`` is the
field-tagged value used at the public surface.
"""

import json
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Union

from pydantic import BaseModel, ConfigDict, model_validator
from pydantic import ValidationError as PydanticValidationError
from sympy import isprime

from .config import MAX_PRIME
from .exceptions import (
    DivisionByZeroError,
    FieldMismatchError,
    InvalidFieldError,
    ValidationError,
)

Raw = Union[int, Fraction]


class FieldKind(str, Enum):
    """Kinds of supported fields."""

    PRIME = "prime"
    RATIONAL = "rational"


class FieldSpec(BaseModel):
    """A field: F_p for a prime p < 2^31, or the rationals."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: FieldKind
    p: int | None = None

    @model_validator(mode="after")
    def _check_modulus(self) -> "FieldSpec":
        if self.kind == FieldKind.RATIONAL:
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
            return self
        if self.p is None:
            raise ValueError("prime field needs a modulus")
        if self.p < 2 or self.p >= MAX_PRIME:
            raise ValueError(f"modulus must lie in [2, 2^31), got {self.p}")
        if not isprime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        return self

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        """Build F_p, rejecting non-prime moduli."""
        try:
            return cls(kind=FieldKind.PRIME, p=p)
        except PydanticValidationError as exc:
            raise InvalidFieldError(_first_error(exc)) from exc

    @classmethod
    def rational(cls) -> "FieldSpec":
        """Build Q."""
        return cls(kind=FieldKind.RATIONAL)

    @property
    def is_prime(self) -> bool:
        return self.kind == FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def order(self) -> int | None:
        """Number of elements, None for Q."""
        return self.p

    def __str__(self) -> str:
        return f"F_{self.p}" if self.is_prime else "Q"

    # -- raw arithmetic ---------------------------------------------------

    @property
    def zero(self) -> Raw:
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.is_prime else Fraction(1)

    def coerce(self, value: Any) -> Raw:
        """Map an int, Fraction, literal string or Scalar into canonical form."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"Scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            value = int(value)
        if self.p is not None:
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise DivisionByZeroError(f"Denominator of {value} vanishes in {self}")
                return num * pow(den, -1, self.p) % self.p
            if isinstance(value, int):
                return value % self.p
        elif isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise ValidationError(f"Cannot interpret {value!r} as an element of {self}")

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.p is not None:
            return (a + b) % self.p
        return a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.p is not None:
            return (a - b) % self.p
        return a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.p is not None:
            return a * b % self.p
        return a * b

    def neg(self, a: Raw) -> Raw:
        if self.p is not None:
            return -a % self.p
        return -a

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise DivisionByZeroError(f"0 has no inverse in {self}")
        if self.p is not None:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    # -- literals ---------------------------------------------------------

    def parse(self, literal: Any) -> Raw:
        """Parse a JSON scalar literal: an int, or a "num/den" string."""
        try:
            if isinstance(literal, str):
                value: Raw = Fraction(literal.strip())
            elif isinstance(literal, (int, Fraction)) and not isinstance(literal, bool):
                value = literal
            else:
                raise ValueError(literal)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"Invalid scalar literal {literal!r} for {self}") from exc
        if self.p is not None and isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator % self.p
        return self.coerce(value)

    def format(self, value: Raw) -> int | str:
        """Canonical JSON literal: residue int, or "num/den" for Q."""
        if self.p is not None:
            return int(value)
        frac = Fraction(value)
        return f"{frac.numerator}/{frac.denominator}"

    def pretty(self, value: Raw) -> str:
        return str(value)

    def to_json(self) -> dict[str, int] | str:
        """JSON form: {"prime": p} or "rational"."""
        if self.p is not None:
            return {"prime": self.p}
        return "rational"

    @classmethod
    def from_json(cls, obj: Any) -> "FieldSpec":
        """Parse the JSON field literal."""
        if isinstance(obj, str) and obj.strip().lower() in ("rational", "q"):
            return cls.rational()
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            modulus = obj["prime"]
            if isinstance(modulus, int) and not isinstance(modulus, bool):
                return cls.prime(modulus)
        raise InvalidFieldError(f"Unrecognised field literal {obj!r}")

    @classmethod
    def from_string(cls, text: str) -> "FieldSpec":
        """Parse a command-line field: "2", "F5", "rational", "Q" or a JSON literal."""
        stripped = text.strip()
        lowered = stripped.lower()
        if lowered in ("rational", "q", "qq"):
            return cls.rational()
        for prefix in ("gf", "f_", "f"):
            if lowered.startswith(prefix) and lowered[len(prefix):].isdigit():
                return cls.prime(int(lowered[len(prefix):]))
        if lowered.isdigit():
            return cls.prime(int(lowered))
        try:
            return cls.from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise InvalidFieldError(f"Unrecognised field {text!r}") from exc


def _first_error(exc: PydanticValidationError) -> str:
    errors = exc.errors()
    if not errors:
        return str(exc)
    return str(errors[0].get("msg", exc)).removeprefix("Value error, ")


@dataclass(frozen=True)
class Scalar:
    """An immutable field element tagged with its field."""

    field: FieldSpec
    value: Raw

    @classmethod
    def of(cls, field: FieldSpec, value: Any) -> "Scalar":
        return cls(field, field.coerce(value))

    def _other(self, other: "Scalar") -> Raw:
        if not isinstance(other, Scalar):
            return self.field.coerce(other)
        if other.field != self.field:
            raise FieldMismatchError(f"Cannot combine {self.field} with {other.field}")
        return other.value

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def to_literal(self) -> int | str:
        return self.field.format(self.value)

    def __str__(self) -> str:
        return self.field.pretty(self.value)


ARITH_OPS = ("add", "sub", "mul", "div", "neg", "inv")


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Apply one field operation to scalars sharing a field.

    Args:
        op: One of add, sub, mul, div, neg, inv
        a: First operand
        b: Second operand, required by the binary operations

    Returns:
        The exact result in canonical form

    Raises:
        FieldMismatchError: If the operands belong to different fields
        DivisionByZeroError: If dividing by or inverting zero
    """
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op not in ARITH_OPS:
        raise ValidationError(f"Unknown scalar operation {op!r}")
    if b is None:
        raise ValidationError(f"Operation {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    return a / b


def random_scalar(rng: random.Random, field: FieldSpec, nonzero: bool = False) -> Raw:
    """Draw a raw element; rationals come from a small numerator/denominator range."""
    while True:
        if field.p is not None:
            value: Raw = rng.randrange(field.p)
        else:
            value = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if not nonzero or value != 0:
            return value
