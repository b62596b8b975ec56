"""Custom exceptions and error payload schemas."""

from typing import Any, Optional

from pydantic import BaseModel, Field


class ErrorDetail(BaseModel):
    """Standardized error payload (printed on stderr by the CLI)."""

    code: str = Field(..., description="Machine-readable error code")
    message: str = Field(..., description="Human-readable error message")
    details: Optional[dict[str, Any]] = Field(None, description="Additional context")


class AppError(Exception):
    """Base exception for all operad-forge errors."""

    def __init__(
        self,
        code: str,
        message: str,
        exit_code: int = 1,
        details: Optional[dict[str, Any]] = None,
    ):
        self.code = code
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)

    def to_response(self) -> ErrorDetail:
        """Convert to the error payload schema."""
        return ErrorDetail(
            code=self.code,
            message=self.message,
            details=self.details if self.details else None,
        )


class ArgumentError(AppError, ValueError):
    """Raised when an operation receives arguments outside its domain."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            code="ARGUMENT_ERROR",
            message=message,
            exit_code=2,
            details=details,
        )


class ParseError(AppError, ValueError):
    """Raised when element text cannot be parsed. Position is 1-based."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        super().__init__(
            code="PARSE_ERROR",
            message=f"{message} at position {position}",
            exit_code=2,
            details={"position": position, "text": text},
        )


class ContextError(AppError, ValueError):
    """Raised when an element is used with the wrong operad."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            code="CONTEXT_ERROR",
            message=message,
            exit_code=2,
            details=details,
        )


class ResourceLimitError(AppError):
    """Raised when an arity or matrix-size bound would be exceeded."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            code="RESOURCE_LIMIT",
            message=message,
            exit_code=3,
            details=details,
        )


class VerificationError(AppError):
    """Raised when a verification suite fails and the caller asked for an exception."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            code="VERIFICATION_FAILED",
            message=message,
            exit_code=1,
            details=details,
        )


class ConfigError(AppError):
    """Raised when an environment setting has an invalid value."""

    def __init__(self, variable: str, value: str, reason: str):
        super().__init__(
            code="CONFIG_ERROR",
            message=f"{variable}={value!r}: {reason}",
            exit_code=2,
            details={"variable": variable, "value": value},
        )
