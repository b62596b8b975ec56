"""Structured logging configuration with run-id context injection."""

import contextvars
import logging
import logging.config
import os
import sys

import structlog

# Context var for the run ID (one per CLI invocation)
run_id_var: contextvars.ContextVar[str] = contextvars.ContextVar("run_id", default="no-run-id")

_configured = False


def get_run_id() -> str:
    """Get current run ID from context."""
    return run_id_var.get()


def set_run_id(run_id: str) -> None:
    """Set run ID for current context."""
    run_id_var.set(run_id)
    # Loggers created at import time pick it up through merge_contextvars
    structlog.contextvars.bind_contextvars(run_id=run_id)


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """Configure structlog once per process.

    Logs go to stderr so that command output on stdout (or --out files) stays
    byte-identical between runs.
    """
    global _configured

    level_name = (level or os.getenv("OPERAD_FORGE_LOG_LEVEL", "WARNING")).upper()
    numeric_level = logging.getLevelName(level_name)
    if not isinstance(numeric_level, int):
        numeric_level = logging.WARNING
        level_name = "WARNING"

    renderer_name = (fmt or os.getenv("OPERAD_FORGE_LOG_FORMAT", "console")).lower()
    renderer = (
        structlog.processors.JSONRenderer()
        if renderer_name == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            # Inject run ID into every log
            structlog.contextvars.merge_contextvars,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    # Route stdlib logging (third-party libraries) through the same renderer
    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "default": {
                    "()": structlog.stdlib.ProcessorFormatter,
                    "processor": renderer,
                },
            },
            "handlers": {
                "default": {
                    "level": level_name,
                    "class": "logging.StreamHandler",
                    "formatter": "default",
                    "stream": "ext://sys.stderr",
                },
            },
            "loggers": {
                "": {
                    "handlers": ["default"],
                    "level": level_name,
                    "propagate": True,
                }
            },
        }
    )
    _configured = True


def get_logger(name: str) -> structlog.BoundLogger:
    """Get a structlog logger; the run ID comes from the context."""
    if not _configured:
        configure_logging()
    return structlog.get_logger(name)
