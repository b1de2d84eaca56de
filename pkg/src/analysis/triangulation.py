"""Reconstruct announcement scenarios by triangulating an edge-vs-path 2-cell."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .. import config
from ..diagram import (
    Diagram,
    Edge,
    EdgeKey,
    PathRef,
    build_diagram,
    parallel_paths,
    path_arrow,
)
from ..ifo import check_ifo, complete_ifo, require_ifo
from ..lattice import Tag
from ..storage.diff import ChangeKind, DiagramDiff, DiffEntry
from ..utils.logging import get_logger, log_latency

logger = get_logger(__name__)

POLICIES = ("audience", "minimal")

Triple = Tuple[int, int, int]


class TriangulationError(ValueError):
    pass


class NoPolygon(TriangulationError):
    pass


class AmbiguousPolygon(TriangulationError):
    def __init__(self, target: EdgeKey, paths: Sequence[PathRef]):
        self.target = target
        self.paths = list(paths)
        chains = ["/".join(path.nodes) for path in self.paths]
        super().__init__(
            f"Edge {target[0]} -> {target[1]} spans {len(chains)} maximal polygons: {', '.join(chains)}"
        )


@dataclass(frozen=True)
class Triangle:
    side1: Edge
    side2: Edge
    apex: Edge

    @property
    def meet(self) -> Tag:
        return self.side1.tag & self.side2.tag


@dataclass(frozen=True)
class Announcement:
    edge: Edge
    announcers: Tag
    audience: Tag

    @property
    def newly_informed(self) -> Tag:
        return self.audience - self.announcers


@dataclass(frozen=True)
class Scenario:
    triangulation: Diagram
    chords: Tuple[EdgeKey, ...]
    inserted: Tuple[EdgeKey, ...]
    triangles: Tuple[Triangle, ...]
    announcements: Tuple[Announcement, ...]
    consequences: DiagramDiff = DiagramDiff()
    feasible: bool = True


@lru_cache(maxsize=None)
def polygon_triangulations(n: int) -> Tuple[FrozenSet[Triple], ...]:
    """Every triangulation of the polygon with vertices ``0..n`` as sets of ``(i, k, j)`` triangles."""

    @lru_cache(maxsize=None)
    def span(i: int, j: int) -> Tuple[FrozenSet[Triple], ...]:
        if j - i < 2:
            return (frozenset(),)
        found = []
        for k in range(i + 1, j):
            for left in span(i, k):
                for right in span(k, j):
                    found.append(left | right | {(i, k, j)})
        return tuple(found)

    if n < 2:
        return ()
    return span(0, n)


def catalan(n: int) -> int:
    value = 1
    for i in range(n):
        value = value * 2 * (2 * i + 1) // (i + 2)
    return value


def maximal_parallel_paths(d: Diagram, edge: Edge) -> List[PathRef]:
    """Parallel paths whose node sequence is not contained in a longer one."""
    paths = parallel_paths(d, edge)

    def contained(inner: PathRef, outer: PathRef) -> bool:
        if len(inner) >= len(outer):
            return False
        remaining = iter(outer.nodes)
        return all(node in remaining for node in inner.nodes)

    return [p for p in paths if not any(contained(p, q) for q in paths if q is not p)]


def _chord_label(path_edges: Sequence[Edge]) -> Optional[str]:
    labels = [edge.label for edge in path_edges]
    if not all(labels):
        return None
    return "".join(reversed(labels))


def _scenario(
    d: Diagram,
    target: Edge,
    vertices: Sequence[str],
    triangles: FrozenSet[Triple],
    polygon_edges: Sequence[Edge],
    policy: str,
) -> Scenario:
    n = len(vertices) - 1
    apexes = sorted(
        ((i, k, j) for i, k, j in triangles if (i, j) != (0, n)), key=lambda t: (t[2] - t[0], t)
    )
    tags: Dict[Tuple[int, int], Tag] = {(i, i + 1): polygon_edges[i].tag for i in range(n)}
    tags[(0, n)] = target.tag

    added: List[Edge] = []
    chords: List[EdgeKey] = []
    for i, k, j in apexes:
        key = (vertices[i], vertices[j])
        chords.append(key)
        if d.has_edge(*key):
            tags[(i, j)] = d.edge(*key).tag
            continue
        if policy == "minimal":
            tag = tags[(i, k)] & tags[(k, j)]
        else:
            tag = target.tag
        tags[(i, j)] = tag
        subpath = PathRef(tuple(polygon_edges[i:j]))
        added.append(Edge(key[0], key[1], path_arrow(d, subpath), tag, _chord_label(subpath.edges)))

    inserted = tuple(sorted(edge.key for edge in added))
    built = build_diagram(
        d.universe,
        d.theory,
        d.nodes,
        d.edges + tuple(added),
        {**d.metadata, "scenario": {"target": list(target.key), "chords": [list(c) for c in sorted(chords)]}},
    )

    consequences = DiagramDiff()
    if not check_ifo(built).ok:
        completed = complete_ifo(built)
        consequences = DiagramDiff(
            tuple(
                DiffEntry(edge.src, edge.dst, edge.tag, completed.edge(*edge.key).tag, ChangeKind.CONSEQUENCE, edge.label)
                for edge in built.edges
                if completed.edge(*edge.key).tag != edge.tag
            )
        )
        built = completed

    triangle_list: List[Triangle] = []
    announcements: List[Announcement] = []
    feasible = True
    for i, k, j in sorted(triangles, key=lambda t: (t[2] - t[0], t)):
        triangle = Triangle(
            side1=built.edge(vertices[i], vertices[k]),
            side2=built.edge(vertices[k], vertices[j]),
            apex=built.edge(vertices[i], vertices[j]),
        )
        triangle_list.append(triangle)
        if triangle.meet < triangle.apex.tag:
            announcements.append(Announcement(triangle.apex, triangle.meet, triangle.apex.tag))
            if triangle.meet.is_bottom:
                feasible = False

    return Scenario(
        triangulation=built,
        chords=tuple(sorted(chords)),
        inserted=inserted,
        triangles=tuple(triangle_list),
        announcements=tuple(announcements),
        consequences=consequences,
        feasible=feasible,
    )


def enumerate_triangulations(
    d: Diagram, target: EdgeKey, policy: Optional[str] = None
) -> List[Scenario]:
    """All triangulations of the polygon spanned by ``target`` and its maximal parallel path.

    Only triangulations containing every chord already present in ``d`` are
    returned. Inserted chords carry the composite of the path they span.
    """
    policy = (policy or config.CHORD_TAG_POLICY).lower()
    if policy not in POLICIES:
        raise TriangulationError(f"Unknown chord tag policy {policy!r}; expected one of {POLICIES}")
    require_ifo(d)
    edge = d.edge(*target)

    with log_latency(logger, "analysis.triangulate", target=f"{edge.src}->{edge.dst}", policy=policy):
        maximal = maximal_parallel_paths(d, edge)
        if not maximal:
            raise NoPolygon(f"Edge {edge.src} -> {edge.dst} has no parallel path")
        if len(maximal) > 1:
            raise AmbiguousPolygon(edge.key, maximal)

        polygon = maximal[0]
        vertices = polygon.nodes
        n = len(vertices) - 1
        position = {node: i for i, node in enumerate(vertices)}
        existing = {
            (position[e.src], position[e.dst])
            for e in d.edges
            if e.src in position and e.dst in position
            and position[e.dst] - position[e.src] >= 2
            and e.key != edge.key
        }

        scenarios = []
        for triangles in polygon_triangulations(n):
            diagonals = {(i, j) for i, _, j in triangles if (i, j) != (0, n)}
            if existing <= diagonals:
                scenarios.append(_scenario(d, edge, vertices, triangles, polygon.edges, policy))
        scenarios.sort(key=lambda scenario: scenario.chords)
        return scenarios


__all__ = [
    "AmbiguousPolygon",
    "Announcement",
    "NoPolygon",
    "POLICIES",
    "Scenario",
    "Triangle",
    "TriangulationError",
    "catalan",
    "enumerate_triangulations",
    "maximal_parallel_paths",
    "polygon_triangulations",
]
