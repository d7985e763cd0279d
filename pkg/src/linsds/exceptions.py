"""Custom exception hierarchy for linsds.

Every error carries a stable machine-readable ``code``, an optional JSON
pointer into the offending input document and the process exit code the CLI
should use when the error escapes a command.
"""

EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3


class LinearSDSError(Exception):
    """Base exception for all linsds errors."""

    default_code = "linsds_error"
    exit_code = EXIT_VALIDATION

    def __init__(
        self,
        message: str,
        code: str | None = None,
        pointer: str | None = None,
    ) -> None:
        """Initialize the exception.

        Args:
            message: Error message
            code: Machine-readable error code (defaults to the class code)
            pointer: JSON pointer to the offending input field, if any
        """
        super().__init__(message)
        self.message = message
        self.code = code or self.default_code
        self.pointer = pointer

    def to_dict(self) -> dict[str, str | None]:
        """Structured form used by the CLI error output."""
        return {"code": self.code, "message": self.message, "pointer": self.pointer}


class FieldMismatchError(LinearSDSError):
    """Raised when operands live in different fields."""

    default_code = "field_mismatch"

    def __init__(self, message: str = "Operands belong to different fields") -> None:
        super().__init__(message)


class DivisionByZeroError(LinearSDSError):
    """Raised when inverting or dividing by the zero scalar."""

    default_code = "division_by_zero"

    def __init__(self, message: str = "Division by zero") -> None:
        super().__init__(message)


class InvalidFieldError(LinearSDSError):
    """Raised for a malformed field description or a non-prime modulus."""

    default_code = "invalid_field"


class DimensionMismatchError(LinearSDSError):
    """Raised when matrix shapes are incompatible."""

    default_code = "dimension_mismatch"


class SingularMatrixError(LinearSDSError):
    """Raised when inverting a singular matrix."""

    default_code = "singular"

    def __init__(self, message: str = "Matrix is singular") -> None:
        super().__init__(message)


class NotAPermutationError(LinearSDSError):
    """Raised when an ordering is required to be a permutation but is not."""

    default_code = "not_a_permutation"


class NotNilpotentError(LinearSDSError):
    """Raised when the nilpotent series is requested for a non-nilpotent matrix."""

    default_code = "not_nilpotent"

    def __init__(self, message: str = "Matrix is not nilpotent") -> None:
        super().__init__(message)


class TooSmallError(LinearSDSError):
    """Raised when a graph family parameter is below its minimum."""

    default_code = "too_small"


class BadMultiplicityError(LinearSDSError):
    """Raised for a multiplicity vector with wrong length or entries below one."""

    default_code = "bad_multiplicity"


class InvalidGraphError(LinearSDSError):
    """Raised for self-loops, duplicate edges or out-of-range vertices."""

    default_code = "invalid_graph"


class InvalidPosetError(LinearSDSError):
    """Raised when a relation is not reflexive, antisymmetric and transitive."""

    default_code = "invalid_poset"


class PosetMismatchError(LinearSDSError):
    """Raised when incidence elements over different posets are combined."""

    default_code = "poset_mismatch"

    def __init__(self, message: str = "Incidence elements belong to different posets") -> None:
        super().__init__(message)


class SupportViolationError(LinearSDSError):
    """Raised when a matrix has a non-zero entry outside its allowed support."""

    default_code = "support_violation"


class InvalidScheduleError(LinearSDSError):
    """Raised when a schedule misses a vertex or names an unknown one."""

    default_code = "invalid_schedule"


class NotInvertibleError(LinearSDSError):
    """Raised when inverting an SDS with a zero diagonal entry."""

    default_code = "not_invertible"


class BadDiagonalError(LinearSDSError):
    """Raised when an incidence element does not have a unit diagonal."""

    default_code = "bad_diagonal"


class BadCutError(LinearSDSError):
    """Raised when a split of a word leaves a vertex out of one half."""

    default_code = "bad_cut"


class InvalidPartitionError(LinearSDSError):
    """Raised when a chain-partition is not a valid partition into chains."""

    default_code = "invalid_partition"


class InvalidCutError(LinearSDSError):
    """Raised when a cut puts a comparable up-element below a low-element."""

    default_code = "invalid_cut"


class StateSpaceTooLargeError(LinearSDSError):
    """Raised when the phase space exceeds the configured state budget."""

    default_code = "state_space_too_large"


class RationalFieldUnsupportedError(LinearSDSError):
    """Raised when a finite-field-only operation is given the rationals."""

    default_code = "rational_field_unsupported"

    def __init__(self, message: str = "Operation requires a prime field") -> None:
        super().__init__(message)


class ValidationError(LinearSDSError):
    """Raised when an input document fails validation."""

    default_code = "validation_failed"

    def __init__(self, message: str = "Validation failed", pointer: str | None = None) -> None:
        super().__init__(message, pointer=pointer)


class VerificationError(LinearSDSError):
    """Raised when a closed form disagrees with the sequential oracle."""

    default_code = "verification_mismatch"
    exit_code = EXIT_VERIFICATION

    def __init__(
        self,
        message: str = "Closed form disagrees with oracle",
        details: dict[str, object] | None = None,
    ) -> None:
        super().__init__(message)
        self.details = details or {}
