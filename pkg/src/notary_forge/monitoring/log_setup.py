"""Loguru sinks for the command line and long-running jobs."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from ..config import AppSettings

LOG_FILE = "forge.log"
ROTATION = "10 MB"
RETENTION = 7
FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "{name}:{function} - {message} {extra}"
)

_sink_ids: list[int] = []


def configure_logging(settings: AppSettings, level: Optional[str] = None) -> None:
    """Replace all sinks with stderr (and a rotating file when FORGE_LOG_DIR is set).

    Safe to call repeatedly.
    """
    level = (level or settings.log_level).upper()
    logger.remove()
    _sink_ids.clear()
    _sink_ids.append(logger.add(sys.stderr, level=level, format=FORMAT, colorize=None))
    if settings.log_dir is not None:
        Path(settings.log_dir).mkdir(parents=True, exist_ok=True)
        _sink_ids.append(
            logger.add(
                Path(settings.log_dir) / LOG_FILE,
                level=level,
                format=FORMAT,
                rotation=ROTATION,
                retention=RETENTION,
                enqueue=True,
            )
        )
