"""Utility helpers for the diagram analysis toolkit."""

from .logging import get_logger, log_latency

__all__ = ["get_logger", "log_latency"]
