"""Logging setup for the command line."""

import logging
import sys
from typing import Optional, TextIO

from frenet4.config import config


def configure_logging(level: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """Send log records, and Python warnings, to stderr.

    stdout carries nothing but CSV and JSON reports, so that two runs of a command
    produce byte-identical output. Warnings raised by numpy and scipy (quadrature
    accuracy, overflow) are routed through the ``py.warnings`` logger.

    Args:
        level: Level name; ``config.log_level`` (FRENET4_LOG_LEVEL) when omitted.
        stream: Destination; the current ``sys.stderr`` when omitted.

    Raises:
        ValueError: The level name is unknown.
    """
    level = (level or config.log_level).upper()
    numeric_level = getattr(logging, level, None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Invalid log level: {level}")

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setLevel(numeric_level)
    handler.setFormatter(logging.Formatter(config.log_format, datefmt=config.log_date_format))

    root_logger = logging.getLogger()
    for existing in root_logger.handlers[:]:
        root_logger.removeHandler(existing)
    root_logger.setLevel(numeric_level)
    root_logger.addHandler(handler)

    logging.captureWarnings(True)
    logging.debug(f"Logging configured with level: {level}")
