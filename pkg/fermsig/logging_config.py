"""
Logging configuration for fermsig

Provides a configured logger for the library and the command-line tool.
"""

import logging
import os
import sys
from typing import Optional, Union


def resolve_level(level: Optional[Union[int, str]] = None) -> int:
    """
    Turn a level name or number into a logging level.

    Falls back to FERMSIG_LOG_LEVEL, then INFO.
    """
    if level is None:
        level = os.getenv("FERMSIG_LOG_LEVEL", "INFO")
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(str(level).upper())
    if not isinstance(resolved, int):
        raise ValueError(f"Unknown log level: {level}")
    return resolved


def setup_logging(level: Optional[Union[int, str]] = None) -> None:
    """
    Set up logging configuration for the application.

    Args:
        level: The logging level to use (default: FERMSIG_LOG_LEVEL or INFO)
    """
    logging.basicConfig(
        level=resolve_level(level),
        format='[%(name)s] %(levelname)s: %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )

