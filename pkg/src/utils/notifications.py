"""Notification helpers for leaks that expose values to eavesdroppers."""

from __future__ import annotations

from typing import Iterable, MutableMapping, Sequence

from .logging import get_logger

logger = get_logger(__name__)


def send_exposure_alert(
    *,
    src: str,
    dst: str,
    exposed_to: Sequence[str],
    label: str | None = None,
    rules: Iterable[str] = (),
) -> None:
    """Emit a structured log representing an alert for a newly exposed value."""

    context: MutableMapping[str, object] = {
        "event": "notification.exposure",
        "edge": f"{src}->{dst}",
        "exposed_to": list(exposed_to),
    }
    if label:
        context["edge_label"] = label
    rule_list = list(rules)
    if rule_list:
        context["rules"] = rule_list

    logger.warning("notification.exposure", extra=context)
