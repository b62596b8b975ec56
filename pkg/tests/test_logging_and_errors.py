"""Tests for logging and error handling."""

import json

import pytest

from operad_forge.core.errors import (
    AppError,
    ArgumentError,
    ConfigError,
    ContextError,
    ErrorDetail,
    ParseError,
    ResourceLimitError,
    VerificationError,
)
from operad_forge.core.logging import configure_logging, get_logger, get_run_id, set_run_id


class TestErrorClasses:
    """Test custom exception classes."""

    def test_argument_error_creates_correct_response(self):
        """Test ArgumentError converts to proper response."""
        exc = ArgumentError("n must be >= 2", details={"n": 1})

        assert exc.code == "ARGUMENT_ERROR"
        assert exc.exit_code == 2
        assert exc.details == {"n": 1}

        response = exc.to_response()
        assert isinstance(response, ErrorDetail)
        assert response.code == "ARGUMENT_ERROR"
        assert response.details == {"n": 1}

    def test_parse_error_includes_position(self):
        exc = ParseError("unexpected 'x'", 4, "d1|x")

        assert exc.code == "PARSE_ERROR"
        assert exc.position == 4
        assert exc.message == "unexpected 'x' at position 4"
        assert exc.details == {"position": 4, "text": "d1|x"}

    @pytest.mark.parametrize(
        "exc,code,exit_code",
        [
            (ContextError("wrong operad"), "CONTEXT_ERROR", 2),
            (ResourceLimitError("too many cells"), "RESOURCE_LIMIT", 3),
            (VerificationError("2 checks failed"), "VERIFICATION_FAILED", 1),
            (ConfigError("OPERAD_FORGE_MAX_CELLS", "x", "expected an integer"), "CONFIG_ERROR", 2),
        ],
    )
    def test_codes_and_exit_codes(self, exc, code, exit_code):
        assert isinstance(exc, AppError)
        assert exc.code == code
        assert exc.exit_code == exit_code

    def test_value_errors(self):
        """Domain errors are also ValueErrors."""
        assert isinstance(ArgumentError("x"), ValueError)
        assert isinstance(ContextError("x"), ValueError)
        assert not isinstance(ResourceLimitError("x"), ValueError)

    def test_response_omits_empty_details(self):
        payload = json.loads(
            ContextError("wrong operad").to_response().model_dump_json(exclude_none=True)
        )
        assert payload == {"code": "CONTEXT_ERROR", "message": "wrong operad"}


class TestRunIDContext:
    """Test run ID injection."""

    def test_set_and_get_run_id(self):
        """Test run ID context var."""
        set_run_id("abc123")

        assert get_run_id() == "abc123"

    def test_run_id_is_in_log_lines(self, capsys):
        configure_logging("INFO", "json")
        set_run_id("run-42")

        get_logger("tests").info("unit.event", n=3)

        line = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert line["event"] == "unit.event"
        assert line["run_id"] == "run-42"
        assert line["n"] == 3

    def test_level_filters_events(self, capsys):
        configure_logging("WARNING", "console")

        get_logger("tests").info("quiet.event")

        assert "quiet.event" not in capsys.readouterr().err

    def test_unknown_level_falls_back_to_warning(self, capsys):
        configure_logging("LOUD", "console")

        get_logger("tests").warning("loud.event")

        assert "loud.event" in capsys.readouterr().err
