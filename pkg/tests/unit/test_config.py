"""Unit tests for configuration module."""

import os
from unittest.mock import patch

import pytest
from pydantic import ValidationError as PydanticValidationError

from linsds.config import (
    DEFAULT_FIELD,
    DEFAULT_MAX_STATES,
    DEFAULT_OUTPUT_FORMAT,
    MAX_STATES_CEILING,
    Settings,
)


class TestSettings:
    """Test settings class."""

    def test_defaults(self):
        """Test creating settings with no arguments."""
        settings = Settings()
        assert settings.default_field == DEFAULT_FIELD
        assert settings.max_states == DEFAULT_MAX_STATES
        assert settings.output_format == DEFAULT_OUTPUT_FORMAT
        assert settings.seed is None

    def test_full_settings(self):
        """Test creating settings with all fields."""
        settings = Settings(
            default_field="rational", max_states=1000, output_format="pretty", seed=7
        )
        assert settings.default_field == "rational"
        assert settings.max_states == 1000
        assert settings.output_format == "pretty"
        assert settings.seed == 7

    def test_default_field_validation(self):
        """Test field literals are parsed."""
        with pytest.raises(PydanticValidationError) as exc_info:
            Settings(default_field={"prime": 4})
        assert "default_field" in str(exc_info.value)

        assert Settings(default_field={"prime": 3}).default_field == {"prime": 3}

    def test_max_states_validation(self):
        """Test the state budget bounds."""
        with pytest.raises(PydanticValidationError) as exc_info:
            Settings(max_states=0)
        assert "max_states must be positive" in str(exc_info.value)

        with pytest.raises(PydanticValidationError) as exc_info:
            Settings(max_states=MAX_STATES_CEILING + 1)
        assert f"max_states cannot exceed {MAX_STATES_CEILING}" in str(exc_info.value)

    def test_output_format_validation(self):
        """Test output format names are normalised and checked."""
        assert Settings(output_format=" DOT ").output_format == "dot"
        with pytest.raises(PydanticValidationError) as exc_info:
            Settings(output_format="yaml")
        assert "output_format must be one of" in str(exc_info.value)

    def test_from_env_with_all_vars(self):
        """Test creating settings from environment variables."""
        env_vars = {
            "LINSDS_FIELD": '{"prime": 5}',
            "LINSDS_MAX_STATES": "4096",
            "LINSDS_FORMAT": "pretty",
            "LINSDS_SEED": "11",
        }

        with patch.dict(os.environ, env_vars):
            settings = Settings.from_env()

        assert settings.default_field == {"prime": 5}
        assert settings.max_states == 4096
        assert settings.output_format == "pretty"
        assert settings.seed == 11

    def test_from_env_without_vars(self):
        """Test defaults when nothing is set."""
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings.from_env()

        assert settings.default_field == DEFAULT_FIELD
        assert settings.max_states == DEFAULT_MAX_STATES

    def test_from_env_with_invalid_values(self):
        """Test that unparseable env values are ignored."""
        env_vars = {
            "LINSDS_FIELD": "{not json",
            "LINSDS_MAX_STATES": "lots",
            "LINSDS_SEED": "not-a-number",
        }

        with patch.dict(os.environ, env_vars):
            settings = Settings.from_env()

        assert settings.default_field == DEFAULT_FIELD
        assert settings.max_states == DEFAULT_MAX_STATES
        assert settings.seed is None

    def test_from_env_with_kwargs_override(self):
        """Test that kwargs override environment variables."""
        env_vars = {"LINSDS_MAX_STATES": "4096", "LINSDS_SEED": "3"}

        with patch.dict(os.environ, env_vars):
            settings = Settings.from_env(max_states=64, seed=None)

        assert settings.max_states == 64
        assert settings.seed == 3

    def test_from_env_rejects_bad_field(self):
        """Test a well-formed but invalid field literal still fails validation."""
        with patch.dict(os.environ, {"LINSDS_FIELD": '{"prime": 1}'}):
            with pytest.raises(PydanticValidationError):
                Settings.from_env()
