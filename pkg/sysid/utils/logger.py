"""
Package-wide logging.

Modules log through get_logger(__name__) and attach their numbers as
``extra={...}``. ContextFormatter appends those fields to the message as
``key=value`` pairs, so a forward step reads

    2026-01-01 12:00:00 | INFO | sysid.er.service | Forward step accepted | index=4 cmi=0.4132 ...
"""

import logging
from typing import Any, Optional

from sysid.config import settings

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Attributes every LogRecord carries; anything else came in through ``extra``.
_RESERVED = set(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}


def _render(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


class ContextFormatter(logging.Formatter):
    """Standard line format followed by the record's ``extra`` fields."""

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        context = {k: v for k, v in vars(record).items() if k not in _RESERVED and not k.startswith("_")}
        if not context:
            return line

        fields = " ".join(f"{key}={_render(value)}" for key, value in context.items())
        head, newline, rest = line.partition("\n")
        # Keep tracebacks below the fields.
        return f"{head} | {fields}{newline}{rest}"


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Return the logger for ``name`` with the sysid handler attached once.

    Args:
        name (Optional[str]): Logger name, usually ``__name__``.

    Returns:
        logging.Logger: Logger writing to stderr at ``settings.LOG_LEVEL``.
    """
    logger = logging.getLogger(name)
    logger.setLevel(settings.LOG_LEVEL.upper())

    if logger.handlers:
        return logger

    handler = logging.StreamHandler()
    handler.setFormatter(ContextFormatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(handler)
    logger.propagate = False

    return logger


def set_level(level: str) -> None:
    """Change the level of every sysid logger created so far."""
    level = level.upper()
    for name in list(logging.root.manager.loggerDict):
        if name == "sysid" or name.startswith("sysid."):
            logging.getLogger(name).setLevel(level)
