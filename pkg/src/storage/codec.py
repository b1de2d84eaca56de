"""JSON interchange format for diagrams."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Mapping, Union

from .. import config
from ..algebra import theory_from_dict
from ..algebra.base import AlgebraError, AlgebraObject
from ..diagram import Diagram, DiagramError, Edge, Node, build_diagram
from ..lattice import ParticipantUniverse, Tag, UniverseError
from ..utils.logging import get_logger, log_latency

logger = get_logger(__name__)


class DiagramSyntaxError(ValueError):
    """The document is not well-formed JSON."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SchemaError(ValueError):
    """The document is JSON but does not describe a diagram."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def diagram_to_dict(d: Diagram) -> Dict[str, Any]:
    edges: List[Dict[str, Any]] = []
    for edge in d.edges:
        record: Dict[str, Any] = {
            "src": edge.src,
            "dst": edge.dst,
            "arrow": d.theory.arrow_to_dict(edge.arrow),
            "tag": edge.tag.members,
        }
        if edge.label:
            record["label"] = edge.label
        edges.append(record)

    document: Dict[str, Any] = {
        "version": config.FORMAT_VERSION,
        "algebra": d.theory.to_dict(),
        "participants": list(d.universe.names),
        "nodes": [{"id": node.id, "object": node.object.value} for node in d.nodes],
        "edges": edges,
    }
    if d.metadata:
        document["metadata"] = dict(d.metadata)
    return document


def serialize_diagram(d: Diagram) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(diagram_to_dict(d), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(container: Mapping[str, Any], key: str, kind: type, location: str) -> Any:
    if key not in container:
        raise SchemaError(location or "$", f"missing required field {key!r}")
    value = container[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise SchemaError(f"{location}.{key}" if location else key, f"expected {kind.__name__}")
    return value


def _tag(universe: ParticipantUniverse, value: Any, location: str) -> Tag:
    if not isinstance(value, list) or not all(isinstance(name, str) for name in value):
        raise SchemaError(location, "a tag must be a list of participant names")
    try:
        return universe.tag(value)
    except UniverseError as exc:
        raise SchemaError(location, str(exc)) from exc


def diagram_from_dict(document: Any) -> Diagram:
    if not isinstance(document, Mapping):
        raise SchemaError("$", "a diagram document must be a JSON object")
    version = document.get("version")
    if version != config.FORMAT_VERSION:
        raise SchemaError("version", f"unsupported format version {version!r}")

    algebra = _require(document, "algebra", dict, "")
    try:
        theory = theory_from_dict(algebra)
    except (AlgebraError, TypeError) as exc:
        raise SchemaError("algebra", str(exc)) from exc

    names = _require(document, "participants", list, "")
    try:
        universe = ParticipantUniverse.of(names)
    except UniverseError as exc:
        raise SchemaError("participants", str(exc)) from exc

    nodes: List[Node] = []
    for i, raw in enumerate(_require(document, "nodes", list, "")):
        location = f"nodes[{i}]"
        if not isinstance(raw, Mapping):
            raise SchemaError(location, "expected an object")
        node_id = _require(raw, "id", str, location)
        object_name = _require(raw, "object", str, location)
        try:
            obj = AlgebraObject(object_name)
        except ValueError:
            raise SchemaError(f"{location}.object", f"unknown object {object_name!r}") from None
        nodes.append(Node(node_id, obj))
    known = {node.id for node in nodes}

    edges: List[Edge] = []
    for i, raw in enumerate(_require(document, "edges", list, "")):
        location = f"edges[{i}]"
        if not isinstance(raw, Mapping):
            raise SchemaError(location, "expected an object")
        src = _require(raw, "src", str, location)
        dst = _require(raw, "dst", str, location)
        for field_name, node_id in (("src", src), ("dst", dst)):
            if node_id not in known:
                raise SchemaError(f"{location}.{field_name}", f"unknown node id {node_id!r}")
        try:
            arrow = theory.arrow_from_dict(_require(raw, "arrow", dict, location))
        except AlgebraError as exc:
            raise SchemaError(f"{location}.arrow", str(exc)) from exc
        tag = _tag(universe, raw.get("tag"), f"{location}.tag")
        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            raise SchemaError(f"{location}.label", "expected str")
        edges.append(Edge(src, dst, arrow, tag, label))

    metadata = document.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SchemaError("metadata", "expected an object")
    try:
        return build_diagram(universe, theory, nodes, edges, metadata)
    except DiagramError as exc:
        raise SchemaError(_location(exc, nodes, edges), str(exc)) from exc


def _location(exc: DiagramError, nodes: List[Node], edges: List[Edge]) -> str:
    """Document position of the record a validation error is about."""
    if exc.node is not None:
        section, matches = "nodes", [i for i, node in enumerate(nodes) if node.id == exc.node]
    elif exc.edge is not None:
        section, matches = "edges", [i for i, edge in enumerate(edges) if edge.key == exc.edge]
    else:
        return "$"
    if not matches:
        return section
    # a repeated id or key is reported at its second occurrence
    return f"{section}[{matches[1] if len(matches) > 1 else matches[0]}]"


def parse_diagram(text: Union[str, bytes]) -> Diagram:
    """Parse and validate a diagram document."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    with log_latency(logger, "storage.parse", size=len(text)):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
        return diagram_from_dict(document)


__all__ = [
    "DiagramSyntaxError",
    "SchemaError",
    "diagram_from_dict",
    "diagram_to_dict",
    "parse_diagram",
    "serialize_diagram",
]
