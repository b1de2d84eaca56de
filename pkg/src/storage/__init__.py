"""Interchange codec, DOT export and diagram diffs."""

from .codec import DiagramSyntaxError, SchemaError, parse_diagram, serialize_diagram
from .diff import ChangeKind, DiagramDiff, DiffEntry, StructuralMismatch, diff_diagrams
from .dot import export_dot

__all__ = [
    "ChangeKind",
    "DiagramDiff",
    "DiagramSyntaxError",
    "DiffEntry",
    "SchemaError",
    "StructuralMismatch",
    "diff_diagrams",
    "export_dot",
    "parse_diagram",
    "serialize_diagram",
]
