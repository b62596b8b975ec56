"""operad-forge entry point: logging, sentry, run id, error-to-exit-code mapping."""

import hashlib
import sys
from collections.abc import Sequence

from operad_forge.cli.app import run
from operad_forge.core.config import get_settings
from operad_forge.core.errors import AppError
from operad_forge.core.logging import configure_logging, get_logger, set_run_id
from operad_forge.core.sentry import init_sentry


def _run_id(argv: Sequence[str]) -> str:
    """Deterministic id from the command line, so identical runs log identically."""
    digest = hashlib.sha256("\0".join(argv).encode("utf-8")).hexdigest()
    return digest[:12]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        settings = get_settings()
        configure_logging(settings.log_level, settings.log_format)
        set_run_id(_run_id(argv))
        init_sentry()
        return run(argv)
    except AppError as e:
        logger = get_logger(__name__)
        logger.warning("cli.error", code=e.code, exit_code=e.exit_code, message=e.message)
        print(e.to_response().model_dump_json(exclude_none=True), file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
