"""Tests for structured logging."""

import json
import logging

from src.utils.logger import JSONFormatter, logger


def test_json_formatter_includes_extra():
    """Test extra context lands in the JSON object."""
    record = logging.makeLogRecord(
        {"name": "invsemi", "levelname": "INFO", "msg": "certified %s", "args": ("vee",), "instance": "vee"}
    )
    data = json.loads(JSONFormatter().format(record))
    assert data["message"] == "certified vee"
    assert data["logger"] == "invsemi"
    assert data["instance"] == "vee"
    assert "args" not in data


def test_logger_setup():
    """Test the package logger has a JSON handler and does not propagate."""
    assert logger.name == "invsemi"
    assert not logger.propagate
    assert any(isinstance(h.formatter, JSONFormatter) for h in logger.handlers)
