"""Logging setup shared by the command line and the report service."""

import logging
import os

LOG_LEVEL_ENV = "AES_WORKBENCH_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | int | None = None) -> logging.Logger:
    """Attach a stream handler to the package logger.

    Args:
        level (str | int | None, optional): Logging level. Falls back on the
        AES_WORKBENCH_LOG_LEVEL environment variable, then WARNING. Defaults to
        None.

    Returns:
        logging.Logger: The configured package logger.
    """
    if level is None:
        level = os.environ.get(LOG_LEVEL_ENV, "WARNING")
    if isinstance(level, str):
        level = level.upper()

    logger = logging.getLogger("aesworkbench")
    logger.setLevel(level)

    if not any(getattr(h, "_aesworkbench", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._aesworkbench = True
        logger.addHandler(handler)

    return logger
