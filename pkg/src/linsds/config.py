"""Configuration module for linsds.

This module holds runtime settings, limits and defaults shared by the library
and the command-line interface.
"""

import contextlib
import json
import os
from typing import Any

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from .exceptions import LinearSDSError

# Arithmetic limits
MAX_PRIME = 2**31  # products of two residues fit in 64 bits

# Phase-space enumeration
DEFAULT_MAX_STATES = 2**20
MAX_STATES_CEILING = 2**24

DEFAULT_FIELD: dict[str, Any] = {"prime": 2}
OUTPUT_FORMATS = ("json", "pretty", "dot")
DEFAULT_OUTPUT_FORMAT = "json"

ENV_PREFIX = "LINSDS_"


class Settings(BaseModel):
    """Runtime settings for linsds commands."""

    default_field: Any = Field(
        default_factory=lambda: dict(DEFAULT_FIELD),
        description="Field used when an input document does not name one",
    )
    max_states: int = Field(
        default=DEFAULT_MAX_STATES, description="Largest phase space that will be enumerated"
    )
    output_format: str = Field(default=DEFAULT_OUTPUT_FORMAT, description="Output rendering")
    seed: int | None = Field(default=None, description="Seed for randomised commands")

    @field_validator("default_field")
    @classmethod
    def validate_default_field(cls, v: Any) -> Any:
        """Validate the field literal by parsing it."""
        from .field import FieldSpec

        try:
            FieldSpec.from_json(v)
        except LinearSDSError as exc:
            raise ValueError(exc.message) from exc
        return v

    @field_validator("max_states")
    @classmethod
    def validate_max_states(cls, v: int) -> int:
        """Validate the state budget."""
        if v < 1:
            raise ValueError("max_states must be positive")
        if v > MAX_STATES_CEILING:
            raise ValueError(f"max_states cannot exceed {MAX_STATES_CEILING}")
        return v

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        """Validate output format name."""
        v = v.strip().lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {', '.join(OUTPUT_FORMATS)}")
        return v

    @classmethod
    def from_env(cls, **kwargs: Any) -> "Settings":
        """Create settings from environment variables.

        Environment variables (a ``.env`` file in the working directory is
        loaded first):
        - LINSDS_FIELD: JSON field literal, e.g. '{"prime": 3}' or '"rational"'
        - LINSDS_MAX_STATES: phase-space budget
        - LINSDS_FORMAT: output format (json, pretty, dot)
        - LINSDS_SEED: default seed for randomised commands

        Args:
            **kwargs: Values overriding the environment

        Returns:
            Settings instance
        """
        load_dotenv()
        env_config: dict[str, Any] = {}

        field_literal = os.getenv(f"{ENV_PREFIX}FIELD")
        if field_literal:
            with contextlib.suppress(ValueError):
                env_config["default_field"] = json.loads(field_literal)

        max_states = os.getenv(f"{ENV_PREFIX}MAX_STATES")
        if max_states:
            with contextlib.suppress(ValueError):
                env_config["max_states"] = int(max_states)

        output_format = os.getenv(f"{ENV_PREFIX}FORMAT")
        if output_format:
            env_config["output_format"] = output_format

        seed = os.getenv(f"{ENV_PREFIX}SEED")
        if seed:
            with contextlib.suppress(ValueError):
                env_config["seed"] = int(seed)

        env_config.update({k: v for k, v in kwargs.items() if v is not None})

        return cls(**env_config)
