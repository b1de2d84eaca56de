"""Information-flow ordering: checking, least completion and the strict-cycle property."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Deque, Dict, List, Set, Tuple

import networkx as nx

from .diagram import (
    Diagram,
    DiagramError,
    Edge,
    EdgeKey,
    PathRef,
    check_commutes,
    parallel_paths,
    path_label,
)
from .lattice import Tag, join_all, meet_all
from .utils.logging import get_logger, log_latency

logger = get_logger(__name__)


class ViolationKind(str, Enum):
    EPISTEMIC = "epistemic"
    ALGEBRAIC = "algebraic"


@dataclass(frozen=True)
class IfoViolation:
    edge: Edge
    path: PathRef
    path_tag: Tag
    edge_tag: Tag
    kind: ViolationKind


@dataclass(frozen=True)
class IfoReport:
    """Verdict plus witnesses; ``explained`` maps every edge to the join of its parallel-path meets."""

    ok: bool
    violations: Tuple[IfoViolation, ...] = ()
    explained: Dict[EdgeKey, Tag] = field(default_factory=dict, compare=False, hash=False)

    @property
    def epistemic(self) -> List[IfoViolation]:
        return [v for v in self.violations if v.kind is ViolationKind.EPISTEMIC]

    @property
    def algebraic(self) -> List[IfoViolation]:
        return [v for v in self.violations if v.kind is ViolationKind.ALGEBRAIC]


class NoIfoAbove(DiagramError):
    """Raised when no IFO diagram with the same graph and arrows lies above the input."""

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class NotIfo(DiagramError):
    """Raised when an analysis requires an IFO input and gets something else."""

    def __init__(self, report: IfoReport):
        self.report = report
        count = len(report.violations)
        super().__init__(f"Diagram does not satisfy the IFO condition ({count} violation(s))")


def check_ifo(d: Diagram) -> IfoReport:
    """Compare every edge with each of its parallel paths."""
    violations: List[IfoViolation] = []
    explained: Dict[EdgeKey, Tag] = {}
    with log_latency(logger, "ifo.check", nodes=len(d.nodes), edges=len(d.edges)):
        for edge in d.edges:
            meets: List[Tag] = []
            for path in parallel_paths(d, edge):
                arrow, tag = path_label(d, path)
                meets.append(tag)
                if not d.theory.arrows_equal(arrow, edge.arrow):
                    violations.append(IfoViolation(edge, path, tag, edge.tag, ViolationKind.ALGEBRAIC))
                if not tag <= edge.tag:
                    violations.append(IfoViolation(edge, path, tag, edge.tag, ViolationKind.EPISTEMIC))
            explained[edge.key] = join_all(d.universe, meets)
    return IfoReport(ok=not violations, violations=tuple(violations), explained=explained)


def require_ifo(d: Diagram) -> IfoReport:
    report = check_ifo(d)
    if not report.ok:
        raise NotIfo(report)
    return report


def complete_ifo(d: Diagram) -> Diagram:
    """Least IFO diagram above ``d`` with the same graph and arrows.

    Worklist iteration of ``tag(e) := tag(e) | join(meet(p) for p parallel to e)``.
    An edge is revisited only when a tag on one of its parallel paths grows.
    """
    with log_latency(logger, "ifo.complete", nodes=len(d.nodes), edges=len(d.edges)):
        commutation = check_commutes(d)
        if not commutation.ok:
            raise NoIfoAbove(
                "Tags cannot repair arrows that do not commute", commutation.violations
            )

        routes: Dict[EdgeKey, List[Tuple[EdgeKey, ...]]] = {}
        dependents: Dict[EdgeKey, Set[EdgeKey]] = {edge.key: set() for edge in d.edges}
        for edge in d.edges:
            routes[edge.key] = [path.keys for path in parallel_paths(d, edge)]
            for keys in routes[edge.key]:
                for key in keys:
                    dependents[key].add(edge.key)

        tags = d.tag_map()
        worklist: Deque[EdgeKey] = deque(edge.key for edge in d.edges if routes[edge.key])
        queued = set(worklist)
        iterations = 0
        while worklist:
            key = worklist.popleft()
            queued.discard(key)
            iterations += 1
            grown = tags[key] | join_all(
                d.universe,
                (meet_all(d.universe, (tags[k] for k in keys)) for keys in routes[key]),
            )
            if grown == tags[key]:
                continue
            tags[key] = grown
            for dependent in sorted(dependents[key]):
                if dependent not in queued:
                    worklist.append(dependent)
                    queued.add(dependent)

        changed = {key: tag for key, tag in tags.items() if tag != d.edge(*key).tag}
        logger.debug("ifo.complete.fixpoint", extra={"iterations": iterations, "changed": len(changed)})
        return d.with_tags(changed)


def strict_cycle_check(d: Diagram) -> bool:
    """``True`` when the strictly-below relation between edge labels has no cycle."""
    relation = nx.DiGraph()
    relation.add_nodes_from(edge.key for edge in d.edges)
    for edge in d.edges:
        for path in parallel_paths(d, edge):
            _, tag = path_label(d, path)
            if not tag < edge.tag:
                continue
            for below in path:
                if below.tag != edge.tag:
                    relation.add_edge(below.key, edge.key)
    return nx.is_directed_acyclic_graph(relation)


__all__ = [
    "IfoReport",
    "IfoViolation",
    "NoIfoAbove",
    "NotIfo",
    "ViolationKind",
    "check_ifo",
    "complete_ifo",
    "require_ifo",
    "strict_cycle_check",
]
