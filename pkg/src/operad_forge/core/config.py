"""Environment-driven settings."""

import os
from functools import lru_cache

from pydantic import BaseModel, Field

from operad_forge.core.errors import ConfigError

DEFAULT_MAX_CELLS = 50_000_000
DEFAULT_MAX_ARITY = 5
DEFAULT_CHAIN_MAP_ARITY = 4


class Settings(BaseModel):
    """Resource bounds and logging options for a process."""

    max_cells: int = Field(DEFAULT_MAX_CELLS, ge=1, description="Cap on rows × cols per matrix")
    max_arity: int = Field(DEFAULT_MAX_ARITY, ge=1, description="Default bound for verify_iso")
    chain_map_arity: int = Field(
        DEFAULT_CHAIN_MAP_ARITY, ge=1, description="Default bound for verify_chain_map"
    )
    log_level: str = "WARNING"
    log_format: str = "console"
    sentry_dsn: str | None = None
    environment: str = "development"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError as e:
        raise ConfigError(name, raw, "expected an integer") from e
    if value < 1:
        raise ConfigError(name, raw, "must be positive")
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Read settings from the environment (cached per process)."""
    log_format = os.getenv("OPERAD_FORGE_LOG_FORMAT", "console").lower()
    if log_format not in {"console", "json"}:
        raise ConfigError("OPERAD_FORGE_LOG_FORMAT", log_format, "expected console or json")

    return Settings(
        max_cells=_int_env("OPERAD_FORGE_MAX_CELLS", DEFAULT_MAX_CELLS),
        max_arity=_int_env("OPERAD_FORGE_MAX_ARITY", DEFAULT_MAX_ARITY),
        chain_map_arity=_int_env("OPERAD_FORGE_CHAIN_MAP_ARITY", DEFAULT_CHAIN_MAP_ARITY),
        log_level=os.getenv("OPERAD_FORGE_LOG_LEVEL", "WARNING").upper(),
        log_format=log_format,
        sentry_dsn=os.getenv("SENTRY_DSN") or None,
        environment=os.getenv("ENVIRONMENT", "development"),
    )


def reset_settings() -> None:
    """Forget cached settings (tests change the environment)."""
    get_settings.cache_clear()
