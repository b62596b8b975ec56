"""
Enums for CLI selectors and report fields.
Enums provide type safety and clarity. Validation for categorical arguments.
"""

import enum


class OutputFormat(str, enum.Enum):
    """Table/report output formats."""

    CSV = "csv"
    JSON = "json"
    PLAIN = "plain"


class Suite(str, enum.Enum):
    """Acceptance suites run by `verify`."""

    THEOREM = "theorem"
    HOMOLOGY = "homology"
    AXIOMS = "axioms"
    COUNTING = "counting"
    ALL = "all"


class DimsSelector(str, enum.Enum):
    """Operads whose dimensions `dims` can tabulate."""

    LIE = "Lie"
    D = "D"
    SPERM = "sPerm"
    SLEIB_INF = "sLeib∞"
    LIE_D = "Lie⊗D"

    @classmethod
    def parse(cls, raw: str) -> "DimsSelector":
        """Accept the canonical names plus ASCII spellings (sLeibinf, Lie*D, LieD)."""
        aliases = {
            "lie": cls.LIE,
            "d": cls.D,
            "sperm": cls.SPERM,
            "sleib∞": cls.SLEIB_INF,
            "sleibinf": cls.SLEIB_INF,
            "sleib": cls.SLEIB_INF,
            "lie⊗d": cls.LIE_D,
            "lie*d": cls.LIE_D,
            "lied": cls.LIE_D,
            "lie#d": cls.LIE_D,
        }
        try:
            return aliases[raw.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown selector {raw!r}") from None


class DiffContext(str, enum.Enum):
    """Which differential `diff` applies."""

    D = "D"
    TREE = "tree"


class CheckStatus(str, enum.Enum):
    """Outcome of a single check."""

    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"
