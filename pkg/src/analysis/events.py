"""Classify each edge as primitive knowledge, a computation, or an announcement."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from ..diagram import Diagram, Edge, EdgeKey, PathRef, parallel_paths, path_tag
from ..ifo import require_ifo
from ..lattice import Tag, join_all


class EventClass(str, Enum):
    PRIMITIVE = "primitive"
    COMPUTATION = "computation"
    ANNOUNCEMENT = "announcement"


@dataclass(frozen=True)
class Route:
    path: PathRef
    meet: Tag


@dataclass(frozen=True)
class EdgeEvent:
    edge: Edge
    cls: EventClass
    explained: Tag
    newly_informed: Tag
    routes: Tuple[Route, ...] = ()
    announcers: Tuple[Tag, ...] = ()

    @property
    def key(self) -> EdgeKey:
        return self.edge.key


@dataclass(frozen=True)
class EventReport:
    events: Tuple[EdgeEvent, ...]

    def of_class(self, cls: EventClass) -> List[EdgeEvent]:
        return [event for event in self.events if event.cls is cls]

    @property
    def announcements(self) -> List[EdgeEvent]:
        return self.of_class(EventClass.ANNOUNCEMENT)

    @property
    def computations(self) -> List[EdgeEvent]:
        return self.of_class(EventClass.COMPUTATION)

    @property
    def primitives(self) -> List[EdgeEvent]:
        return self.of_class(EventClass.PRIMITIVE)

    def event(self, src: str, dst: str) -> EdgeEvent:
        for event in self.events:
            if event.key == (src, dst):
                return event
        raise KeyError((src, dst))


def classify_edge(d: Diagram, edge: Edge) -> EdgeEvent:
    paths = parallel_paths(d, edge)
    if not paths:
        bottom = d.universe.bottom
        return EdgeEvent(edge, EventClass.PRIMITIVE, bottom, bottom)

    routes = tuple(Route(path, path_tag(d, path)) for path in paths)
    explained = join_all(d.universe, (route.meet for route in routes))
    announcers: List[Tag] = []
    for route in routes:
        # bottom meets explain nothing
        if not route.meet.is_bottom and route.meet not in announcers:
            announcers.append(route.meet)

    if explained == edge.tag:
        cls = EventClass.COMPUTATION
    else:
        cls = EventClass.ANNOUNCEMENT
    return EdgeEvent(
        edge=edge,
        cls=cls,
        explained=explained,
        newly_informed=edge.tag - explained,
        routes=routes,
        announcers=tuple(announcers),
    )


def classify_events(d: Diagram) -> EventReport:
    """Per-edge classification; the diagram must satisfy IFO."""
    require_ifo(d)
    return EventReport(tuple(classify_edge(d, edge) for edge in d.edges))
