"""Structured JSON logging on stderr; stdout belongs to rendered reports."""

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict

from .config import settings

# Attributes every LogRecord carries; anything else came in through `extra=`.
_RESERVED = frozenset(vars(logging.makeLogRecord({}))) | {"message", "asctime"}


class JSONFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc)
            .isoformat()
            .replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        # Context passed as logger.info(..., extra={"instance": key})
        for key, value in vars(record).items():
            if key not in _RESERVED and key not in log_data:
                log_data[key] = value

        return json.dumps(log_data, default=str)


def setup_logging(name: str = "invsemi") -> logging.Logger:
    """
    Configure the package logger.

    Args:
        name: Logger name

    Returns:
        Logger writing JSON to stderr at settings.log_level
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, settings.log_level))
    logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(JSONFormatter())
    logger.addHandler(handler)
    logger.propagate = False

    return logger


logger = setup_logging()
