# File: tests/conftest.py
"""Pytest configuration and fixtures."""

import pytest

from operad_forge.core.cache import clear_cache
from operad_forge.core.config import reset_settings
from operad_forge.core.logging import configure_logging, set_run_id

ENV_VARS = (
    "OPERAD_FORGE_MAX_CELLS",
    "OPERAD_FORGE_MAX_ARITY",
    "OPERAD_FORGE_CHAIN_MAP_ARITY",
    "OPERAD_FORGE_LOG_LEVEL",
    "OPERAD_FORGE_LOG_FORMAT",
    "SENTRY_DSN",
    "ENVIRONMENT",
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Every test starts from default settings and a fresh run id."""
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    # Loggers write to the sys.stderr seen at configure time; capsys swaps it per test
    configure_logging()
    set_run_id("test-run")
    yield
    reset_settings()


@pytest.fixture
def small_cell_cap(monkeypatch):
    """Cap matrices at 100 cells; memoized matrices are dropped so the cap applies."""
    monkeypatch.setenv("OPERAD_FORGE_MAX_CELLS", "100")
    reset_settings()
    clear_cache()
    yield 100
    clear_cache()


@pytest.fixture
def env(monkeypatch):
    """Set environment variables and drop cached settings."""

    def _set(**values: str) -> None:
        for name, value in values.items():
            monkeypatch.setenv(name, value)
        reset_settings()

    return _set
