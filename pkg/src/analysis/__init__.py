"""Views, leaks, event classification, triangulation and orderings."""

from .events import EdgeEvent, EventClass, EventReport, Route, classify_events
from .orderings import CountExplosion, OrderingResult, enumerate_orderings
from .triangulation import (
    AmbiguousPolygon,
    Announcement,
    NoPolygon,
    Scenario,
    Triangle,
    TriangulationError,
    enumerate_triangulations,
)
from .views import LeakRule, LeakRuleError, apply_leak, parse_rule, restrict_view, rules_from_json

__all__ = [
    "AmbiguousPolygon",
    "Announcement",
    "CountExplosion",
    "EdgeEvent",
    "EventClass",
    "EventReport",
    "LeakRule",
    "LeakRuleError",
    "NoPolygon",
    "OrderingResult",
    "Route",
    "Scenario",
    "Triangle",
    "TriangulationError",
    "apply_leak",
    "classify_events",
    "enumerate_orderings",
    "enumerate_triangulations",
    "parse_rule",
    "restrict_view",
    "rules_from_json",
]
