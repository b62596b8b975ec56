"""Pydantic schemas for verification reports, run configuration and element payloads."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, computed_field

from operad_forge.models.enums import CheckStatus, OutputFormat

SCHEMA_VERSION = "operad-forge/1"


class TermPayload(BaseModel):
    """One term of an element in JSON form."""

    key: str = Field(..., description="Basis key in canonical text form")
    coeff: str = Field(..., description="Exact rational coefficient, 'p/q' or 'p'")


class ElementPayload(BaseModel):
    """JSON element form: arity plus ordered terms."""

    arity: int = Field(..., ge=1)
    terms: list[TermPayload] = Field(default_factory=list)


class CheckReport(BaseModel):
    """Result of a single check."""

    model_config = ConfigDict(populate_by_name=True)

    check: str = Field(..., description="Check name, e.g. verify_iso")
    arity: int | None = Field(default=None, description="Arity the check ran at")
    expected: Any = None
    actual: Any = None
    status: CheckStatus = CheckStatus.PASSED
    witness: str | None = Field(default=None, description="Failing element in text form")
    detail: str | None = None

    @computed_field(alias="pass")  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASSED

    @classmethod
    def compare(
        cls, check: str, arity: int | None, expected: Any, actual: Any, **extra: Any
    ) -> "CheckReport":
        """Build a report that passes iff expected == actual."""
        status = CheckStatus.PASSED if expected == actual else CheckStatus.FAILED
        return cls(
            check=check, arity=arity, expected=expected, actual=actual, status=status, **extra
        )

    @classmethod
    def skipped(cls, check: str, arity: int | None, reason: str) -> "CheckReport":
        return cls(check=check, arity=arity, status=CheckStatus.SKIPPED, detail=reason)


class SuiteReport(BaseModel):
    """All checks of one `verify` invocation."""

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    suite: str
    max_n: int
    seed: int
    long_run: bool = False
    checks: list[CheckReport] = Field(default_factory=list)

    model_config = ConfigDict(populate_by_name=True)

    @property
    def failed(self) -> list[CheckReport]:
        return [c for c in self.checks if c.status == CheckStatus.FAILED]

    @property
    def ok(self) -> bool:
        return not self.failed


class RunConfig(BaseModel):
    """Parsed CLI invocation."""

    command: str
    max_n: int = Field(default=5, ge=1, description="Max arity")
    degree: int | None = Field(default=None, ge=0, description="Degree filter")
    format: OutputFormat = OutputFormat.CSV
    out: str | None = Field(default=None, description="Output path; stdout when omitted")
    long_run: bool = False
    seed: int = 0


class DimensionRow(BaseModel):
    """One row of the `dims` table."""

    operad: str
    n: int
    degree: int | None = None
    profile: str | None = None
    dim: int
    closed_form: int | None = None


class SchroederRow(BaseModel):
    """One row of the `schroeder` table."""

    n: int
    s: int
    enumerated: int | None = None
    from_dims: int = Field(..., description="(1/n)·Σ_a C(n+a−1,a)C(n−2,a−1)")
