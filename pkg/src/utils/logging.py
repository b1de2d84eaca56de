"""Structured logging helpers for the analysis modules."""

from __future__ import annotations

import json
import logging
import os
import sys
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Iterator

_DEFAULT_LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
_DEFAULT_LOG_FORMAT = os.getenv("AE_LOG_FORMAT", "json").strip().lower()
_RESERVED_LOG_RECORD_KEYS = frozenset(logging.LogRecord("", 0, "", 0, "", None, None).__dict__) | {
    "message",
    "asctime",
    "taskName",
}

_LOGGING_INITIALIZED = False


def _stringify(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    try:
        json.dumps(value)
    except TypeError:
        return str(value)
    return value


def _extra_fields(record: logging.LogRecord) -> Dict[str, Any]:
    return {
        key: _stringify(value)
        for key, value in record.__dict__.items()
        if key not in _RESERVED_LOG_RECORD_KEYS and not key.startswith("_")
    }


class _JsonFormatter(logging.Formatter):
    """Formatter that emits one JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:  # pragma: no cover - delegated to stdlib
        log: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname.lower(),
            "logger": record.name,
            "message": record.getMessage(),
        }
        log.update(_extra_fields(record))

        if record.exc_info:
            log["exception"] = self.formatException(record.exc_info)
        if record.stack_info:
            log["stack"] = record.stack_info

        return json.dumps(log, default=_stringify)


class _TextFormatter(logging.Formatter):
    """Single-line ``key=value`` formatter for interactive use."""

    def format(self, record: logging.LogRecord) -> str:  # pragma: no cover - delegated to stdlib
        fields = " ".join(f"{key}={value}" for key, value in sorted(_extra_fields(record).items()))
        line = f"{record.levelname.lower()} {record.name}: {record.getMessage()}"
        if fields:
            line = f"{line} {fields}"
        if record.exc_info:
            line = f"{line}\n{self.formatException(record.exc_info)}"
        return line


def setup_logging(level: str | int = _DEFAULT_LOG_LEVEL, fmt: str = _DEFAULT_LOG_FORMAT) -> None:
    """Configure global logging once; records go to stderr so stdout stays a clean report stream."""

    global _LOGGING_INITIALIZED
    if _LOGGING_INITIALIZED:
        return

    log_level = logging.getLevelName(level)
    if isinstance(log_level, str):  # unknown level names return string representation
        log_level = logging.WARNING

    handler = logging.StreamHandler(stream=sys.stderr)
    handler.setFormatter(_TextFormatter() if fmt == "text" else _JsonFormatter())

    root = logging.getLogger()
    root.setLevel(log_level)
    root.handlers.clear()
    root.addHandler(handler)

    _LOGGING_INITIALIZED = True


def get_logger(name: str | None = None) -> logging.Logger:
    """Return a module-specific logger configured for structured logging."""

    setup_logging()
    return logging.getLogger(name)


@contextmanager
def log_latency(logger: logging.Logger, event: str, **context: Any) -> Iterator[None]:
    """Context manager that logs latency and failures for wrapped analyses."""

    fields = {key: _stringify(value) for key, value in context.items()}
    start = time.perf_counter()

    def _emit(status: str, emit) -> None:
        duration_ms = round((time.perf_counter() - start) * 1000, 2)
        emit(event, extra={**fields, "event": event, "status": status, "duration_ms": duration_ms})

    try:
        yield
    except Exception:
        _emit("error", logger.exception)
        raise
    _emit("ok", logger.info)
