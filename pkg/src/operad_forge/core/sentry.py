"""Sentry error tracking for long verification runs."""

import sentry_sdk
from sentry_sdk.integrations.logging import LoggingIntegration
from sentry_sdk.utils import BadDsn

from operad_forge.core.config import get_settings
from operad_forge.core.errors import AppError
from operad_forge.core.logging import get_logger

logger = get_logger(__name__)

# Guard against multiple initializations
_sentry_initialized = False

PLACEHOLDER_PATTERNS = ("xxx", "placeholder", "your-dsn", "example.com")


def init_sentry() -> bool:
    """
    Initialize Sentry SDK if SENTRY_DSN is set and looks real.

    Usage errors (exit code 2) are never reported; see _filter_event.

    Returns:
        True when Sentry is active after the call
    """
    global _sentry_initialized

    if _sentry_initialized:
        return True

    settings = get_settings()
    sentry_dsn = (settings.sentry_dsn or "").strip()
    if not sentry_dsn:
        logger.debug("sentry.disabled", reason="no_dsn")
        return False

    if not sentry_dsn.startswith(("https://", "http://")) or any(
        pattern in sentry_dsn.lower() for pattern in PLACEHOLDER_PATTERNS
    ):
        dsn_preview = sentry_dsn[:20] + "..." if len(sentry_dsn) > 20 else sentry_dsn
        logger.info("sentry.disabled", reason="placeholder_dsn", dsn_preview=dsn_preview)
        return False

    try:
        sentry_sdk.init(
            dsn=sentry_dsn,
            environment=settings.environment,
            traces_sample_rate=0.0,
            send_default_pii=False,
            integrations=[LoggingIntegration(level=None, event_level=None)],
            before_send=_filter_event,
        )
    except BadDsn as exc:
        logger.warning("sentry.init_failed", error=str(exc))
        return False

    _sentry_initialized = True
    logger.info("sentry.initialized", environment=settings.environment)
    return True


def _filter_event(event: dict, hint: dict) -> dict | None:
    """
    Drop usage errors and strip element payloads from Sentry events.

    Element texts in `extra` can be very large (full differentials); only their
    length is kept.
    """
    exc_info = hint.get("exc_info") if isinstance(hint, dict) else None
    if exc_info:
        exc = exc_info[1]
        if isinstance(exc, AppError) and exc.exit_code == 2:
            return None

    try:
        extra = event.get("extra")
        if isinstance(extra, dict):
            filtered_extra = {}
            for key, value in extra.items():
                if str(key).lower() in {"element", "witness", "text"}:
                    filtered_extra[f"{key}_length"] = len(str(value))
                    continue
                filtered_extra[key] = value
            event["extra"] = filtered_extra
    except Exception as exc:  # never block sending on a filter bug
        logger.error("sentry.filter_error", error=str(exc))

    return event
