"""A-E diagrams: object-labelled nodes and (arrow, tag)-labelled edges over a DAG."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property, reduce
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from . import config
from .algebra.base import AlgebraArrow, AlgebraError, AlgebraObject, AlgebraTheory
from .lattice import ParticipantUniverse, Tag, UniverseError, meet_all

EdgeKey = Tuple[str, str]


class DiagramError(ValueError):
    """Base class for diagram validation and query failures.

    Validation errors name the offending ``node`` id or ``edge`` key when there is one.
    """

    def __init__(self, message: str = "", *, node: Optional[str] = None, edge: Optional[EdgeKey] = None):
        super().__init__(message)
        self.node = node
        self.edge = edge


class DuplicateNodeId(DiagramError):
    pass


class UnknownNode(DiagramError):
    pass


class TypeMismatch(DiagramError):
    pass


class ParallelEdge(DiagramError):
    pass


class SelfLoop(DiagramError):
    pass


class CycleDetected(DiagramError):
    def __init__(self, cycle: Sequence[EdgeKey]):
        self.cycle = list(cycle)
        chain = " -> ".join([src for src, _ in self.cycle] + [self.cycle[0][0]]) if self.cycle else ""
        super().__init__(f"Diagram contains a cycle: {chain}", edge=self.cycle[0] if self.cycle else None)


class PathExplosion(DiagramError):
    pass


class EmptyView(DiagramError):
    pass


@dataclass(frozen=True)
class Node:
    id: str
    object: AlgebraObject


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    arrow: AlgebraArrow
    tag: Tag
    label: Optional[str] = field(default=None, compare=False)

    @property
    def key(self) -> EdgeKey:
        return (self.src, self.dst)

    def with_tag(self, tag: Tag) -> "Edge":
        return replace(self, tag=tag)


@dataclass(frozen=True)
class PathRef:
    """A non-empty chain of consecutive edges."""

    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        edges = tuple(self.edges)
        if not edges:
            raise DiagramError("A path needs at least one edge")
        for first, second in zip(edges, edges[1:]):
            if first.dst != second.src:
                raise DiagramError(f"Edges {first.key} and {second.key} are not consecutive")
        object.__setattr__(self, "edges", edges)

    @property
    def src(self) -> str:
        return self.edges[0].src

    @property
    def dst(self) -> str:
        return self.edges[-1].dst

    @property
    def keys(self) -> Tuple[EdgeKey, ...]:
        return tuple(edge.key for edge in self.edges)

    @property
    def nodes(self) -> Tuple[str, ...]:
        return (self.src,) + tuple(edge.dst for edge in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


@dataclass(frozen=True)
class Diagram:
    """Validated A-E diagram; build with :func:`build_diagram`.

    Nodes are kept sorted by id and edges by ``(src, dst)`` so every query and
    every serialized form is deterministic.
    """

    universe: ParticipantUniverse
    theory: AlgebraTheory
    nodes: Tuple[Node, ...]
    edges: Tuple[Edge, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(node.id for node in self.nodes)
        for edge in self.edges:
            graph.add_edge(edge.src, edge.dst, edge=edge)
        return graph

    @cached_property
    def _nodes_by_id(self) -> Dict[str, Node]:
        return {node.id: node for node in self.nodes}

    @cached_property
    def _edges_by_key(self) -> Dict[EdgeKey, Edge]:
        return {edge.key: edge for edge in self.edges}

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes_by_id[node_id]
        except KeyError:
            raise UnknownNode(f"Unknown node {node_id!r}") from None

    def edge(self, src: str, dst: str) -> Edge:
        try:
            return self._edges_by_key[(src, dst)]
        except KeyError:
            raise UnknownNode(f"No edge {src} -> {dst}") from None

    def has_edge(self, src: str, dst: str) -> bool:
        return (src, dst) in self._edges_by_key

    def describe(self, edge: Edge) -> str:
        return edge.label or self.theory.describe(edge.arrow)

    def with_tags(self, tags: Mapping[EdgeKey, Tag]) -> "Diagram":
        """Copy with some edge tags replaced; graph and arrows are unchanged."""
        for key, tag in tags.items():
            self.edge(*key)
            if tag.universe != self.universe:
                raise UniverseError(f"Tag {tag} for edge {key} is over a different universe")
        edges = tuple(edge.with_tag(tags[edge.key]) if edge.key in tags else edge for edge in self.edges)
        return Diagram(self.universe, self.theory, self.nodes, edges, dict(self.metadata))

    def with_metadata(self, **updates: Any) -> "Diagram":
        return replace(self, metadata={**self.metadata, **updates})

    def tag_map(self) -> Dict[EdgeKey, Tag]:
        return {edge.key: edge.tag for edge in self.edges}


def build_diagram(
    universe: ParticipantUniverse,
    theory: AlgebraTheory,
    nodes: Iterable[Node],
    edges: Iterable[Edge],
    metadata: Optional[Mapping[str, Any]] = None,
) -> Diagram:
    """Validate nodes and edges and return an immutable :class:`Diagram`."""
    by_id: Dict[str, Node] = {}
    for node in nodes:
        if node.id in by_id:
            raise DuplicateNodeId(f"Duplicate node id {node.id!r}", node=node.id)
        if node.object not in theory.objects:
            raise TypeMismatch(
                f"Node {node.id!r} has object {node.object.value!r}, not available in the {theory.kind} theory",
                node=node.id,
            )
        by_id[node.id] = node

    by_key: Dict[EdgeKey, Edge] = {}
    for edge in edges:
        for endpoint in (edge.src, edge.dst):
            if endpoint not in by_id:
                raise UnknownNode(
                    f"Edge {edge.src} -> {edge.dst} references unknown node {endpoint!r}", edge=edge.key
                )
        if edge.src == edge.dst:
            raise SelfLoop(f"Self-loop on node {edge.src!r}", edge=edge.key)
        if edge.key in by_key:
            raise ParallelEdge(f"More than one edge {edge.src} -> {edge.dst}", edge=edge.key)
        try:
            arrow = theory.normalize(edge.arrow)
        except AlgebraError as exc:
            raise TypeMismatch(f"Edge {edge.src} -> {edge.dst}: {exc}", edge=edge.key) from exc
        source, target = by_id[edge.src].object, by_id[edge.dst].object
        if arrow.source != source or arrow.target != target:
            raise TypeMismatch(
                f"Edge {edge.src} -> {edge.dst} carries {theory.describe(arrow)}: "
                f"{arrow.source.value} -> {arrow.target.value}, nodes are {source.value} -> {target.value}",
                edge=edge.key,
            )
        if edge.tag.universe != universe:
            raise UniverseError(f"Edge {edge.src} -> {edge.dst} has a tag over a different universe")
        by_key[edge.key] = replace(edge, arrow=arrow)

    diagram = Diagram(
        universe=universe,
        theory=theory,
        nodes=tuple(sorted(by_id.values(), key=lambda node: node.id)),
        edges=tuple(by_key[key] for key in sorted(by_key)),
        metadata=dict(metadata or {}),
    )
    try:
        cycle = nx.find_cycle(diagram.graph)
    except nx.NetworkXNoCycle:
        return diagram
    raise CycleDetected([(src, dst) for src, dst in cycle])


def all_paths(d: Diagram, src: str, dst: str, cap: Optional[int] = None) -> List[PathRef]:
    """Every directed path from ``src`` to ``dst`` in lexicographic edge order."""
    d.node(src)
    d.node(dst)
    if src == dst:
        return []
    limit = config.MAX_PATHS if cap is None else cap
    found: List[Tuple[EdgeKey, ...]] = []
    for keys in nx.all_simple_edge_paths(d.graph, src, dst):
        found.append(tuple(keys))
        if len(found) > limit:
            raise PathExplosion(f"More than {limit} paths from {src} to {dst}")
    found.sort()
    return [PathRef(tuple(d.edge(*key) for key in keys)) for keys in found]


def parallel_paths(d: Diagram, edge: Edge) -> List[PathRef]:
    """Paths of length >= 2 sharing ``edge``'s endpoints."""
    return [path for path in all_paths(d, edge.src, edge.dst) if len(path) >= 2]


def path_arrow(d: Diagram, path: PathRef) -> AlgebraArrow:
    return reduce(d.theory.compose, (edge.arrow for edge in path.edges[1:]), path.edges[0].arrow)


def path_tag(d: Diagram, path: PathRef) -> Tag:
    return meet_all(d.universe, (edge.tag for edge in path))


def path_label(d: Diagram, path: PathRef) -> Tuple[AlgebraArrow, Tag]:
    """Composite arrow and tag meet along ``path``."""
    return path_arrow(d, path), path_tag(d, path)


@dataclass(frozen=True)
class CommutationViolation:
    src: str
    dst: str
    left: PathRef
    right: PathRef


@dataclass(frozen=True)
class CommutationReport:
    ok: bool
    violations: Tuple[CommutationViolation, ...] = ()


def check_commutes(d: Diagram) -> CommutationReport:
    """Check that all paths between any two nodes have equal composites."""
    violations: List[CommutationViolation] = []
    for node in d.nodes:
        for target in sorted(nx.descendants(d.graph, node.id)):
            paths = all_paths(d, node.id, target)
            if len(paths) < 2:
                continue
            reference = path_arrow(d, paths[0])
            for other in paths[1:]:
                if not d.theory.arrows_equal(reference, path_arrow(d, other)):
                    violations.append(CommutationViolation(node.id, target, paths[0], other))
                    break
    return CommutationReport(ok=not violations, violations=tuple(violations))


def diagram_leq(d1: Diagram, d2: Diagram) -> bool:
    """``d1`` is a labelled subgraph of ``d2`` with tags contained edge by edge."""
    if d1.universe != d2.universe:
        raise UniverseError("Diagrams are over different participant universes")
    if d1.theory != d2.theory:
        raise UniverseError("Diagrams are over different algebraic theories")
    for node in d1.nodes:
        if node.id not in d2._nodes_by_id or d2.node(node.id).object != node.object:
            return False
    for edge in d1.edges:
        if not d2.has_edge(edge.src, edge.dst):
            return False
        other = d2.edge(edge.src, edge.dst)
        if not d1.theory.arrows_equal(edge.arrow, other.arrow) or not edge.tag <= other.tag:
            return False
    return True


__all__ = [
    "CommutationReport",
    "CommutationViolation",
    "CycleDetected",
    "Diagram",
    "DiagramError",
    "DuplicateNodeId",
    "Edge",
    "EdgeKey",
    "EmptyView",
    "Node",
    "ParallelEdge",
    "PathExplosion",
    "PathRef",
    "SelfLoop",
    "TypeMismatch",
    "UnknownNode",
    "all_paths",
    "build_diagram",
    "check_commutes",
    "diagram_leq",
    "parallel_paths",
    "path_arrow",
    "path_label",
    "path_tag",
]
