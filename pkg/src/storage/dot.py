"""Graphviz DOT rendering of diagrams, optionally annotated with analysis results."""

from __future__ import annotations

from typing import TYPE_CHECKING, Dict, Optional, Set, Union

import graphviz

from ..algebra.base import AlgebraObject
from ..diagram import Diagram, EdgeKey
from ..ifo import IfoReport

if TYPE_CHECKING:  # pragma: no cover - imported for type hints only
    from ..analysis.events import EventReport

_VIOLATION_STYLE = {"color": "red", "fontcolor": "red", "penwidth": "2"}
_ANNOUNCEMENT_STYLE = {"color": "blue", "fontcolor": "blue", "style": "dashed"}


def _edge_styles(annotations: Union[IfoReport, "EventReport", None]) -> Dict[EdgeKey, Dict[str, str]]:
    styles: Dict[EdgeKey, Dict[str, str]] = {}
    if annotations is None:
        return styles
    if isinstance(annotations, IfoReport):
        failing: Set[EdgeKey] = {violation.edge.key for violation in annotations.violations}
        return {key: dict(_VIOLATION_STYLE) for key in failing}
    for event in annotations.announcements:
        styles[event.key] = dict(_ANNOUNCEMENT_STYLE)
    return styles


def export_dot(d: Diagram, annotations: Optional[Union[IfoReport, "EventReport"]] = None) -> str:
    """DOT source with ``"arrow, {tag}"`` edge labels in canonical order."""
    dot = graphviz.Digraph("ae_diagram", comment=f"A-E diagram over {d.theory.kind}")
    dot.attr(rankdir="TB")
    for node in d.nodes:
        if node.object is AlgebraObject.UNIT:
            dot.node(node.id, node.id, shape="point", xlabel=node.id)
        else:
            dot.node(node.id, node.id)
    styles = _edge_styles(annotations)
    for edge in d.edges:
        dot.edge(edge.src, edge.dst, label=f"{d.describe(edge)}, {edge.tag}", **styles.get(edge.key, {}))
    return dot.source
