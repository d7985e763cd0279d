"""Base model with common functionality for all documents and reports."""

from typing import Any, TypeVar

from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict
from pydantic import ValidationError as PydanticValidationError

from ..exceptions import ValidationError


def json_pointer(loc: tuple[Any, ...]) -> str:
    """Render a pydantic error location as a JSON pointer."""
    return "".join(f"/{part}" for part in loc)


ModelT = TypeVar("ModelT", bound="BaseModel")


def _as_validation_error(exc: PydanticValidationError) -> ValidationError:
    first = exc.errors()[0]
    pointer = json_pointer(tuple(first.get("loc", ())))
    return ValidationError(str(first.get("msg", "invalid value")), pointer=pointer)


class BaseModel(PydanticBaseModel):
    """Base model with common configuration for all models."""

    model_config = ConfigDict(
        populate_by_name=True,
        use_enum_values=True,
        validate_assignment=True,
        str_strip_whitespace=True,
        arbitrary_types_allowed=False,
        extra="forbid",  # unknown keys are input mistakes
    )

    @classmethod
    def parse(cls: type[ModelT], data: Any) -> ModelT:
        """Validate a decoded JSON document.

        Raises:
            ValidationError: With a JSON pointer to the first offending field
        """
        try:
            return cls.model_validate(data)
        except PydanticValidationError as exc:
            raise _as_validation_error(exc) from exc

    @classmethod
    def parse_json(cls: type[ModelT], text: str | bytes) -> ModelT:
        """Validate a JSON document given as text."""
        try:
            return cls.model_validate_json(text)
        except PydanticValidationError as exc:
            raise _as_validation_error(exc) from exc

    def to_dict(self, exclude_none: bool = True) -> dict[str, Any]:
        """Convert model to dictionary.

        Args:
            exclude_none: Whether to exclude None values

        Returns:
            Dictionary representation of the model
        """
        return self.model_dump(exclude_none=exclude_none)

    def to_json(self, exclude_none: bool = True, indent: int = 2) -> str:
        """Convert model to JSON string.

        Args:
            exclude_none: Whether to exclude None values
            indent: JSON indentation level

        Returns:
            JSON string representation of the model
        """
        return self.model_dump_json(exclude_none=exclude_none, indent=indent)
