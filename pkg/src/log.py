import logging
import sys

import structlog

from src import settings


def configure_logging(verbose: int = 0) -> None:
    """Send structlog output to stderr so stdout only carries reports."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG

    renderer = (
        structlog.dev.ConsoleRenderer(colors=False)
        if settings.in_dev_environment
        else structlog.processors.JSONRenderer(sort_keys=True)
    )
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
