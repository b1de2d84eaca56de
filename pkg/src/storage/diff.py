"""Tag-level differences between diagrams that share a graph and arrows."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..diagram import Diagram, EdgeKey
from ..lattice import ParticipantUniverse, Tag, UniverseError


class StructuralMismatch(ValueError):
    """Raised when two diagrams differ in more than their tags."""

    def __init__(self, mismatches: Sequence[str]):
        self.mismatches = list(mismatches)
        super().__init__("Diagrams differ structurally: " + "; ".join(self.mismatches))


class ChangeKind(str, Enum):
    SUBSTITUTION = "substitution"
    CONSEQUENCE = "consequence"


@dataclass(frozen=True)
class DiffEntry:
    src: str
    dst: str
    old: Tag
    new: Tag
    kind: Optional[ChangeKind] = None
    label: Optional[str] = None

    @property
    def key(self) -> EdgeKey:
        return (self.src, self.dst)

    @property
    def gained(self) -> Tag:
        return self.new - self.old


@dataclass(frozen=True)
class DiagramDiff:
    entries: Tuple[DiffEntry, ...] = ()

    def __iter__(self) -> Iterator[DiffEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def of_kind(self, kind: ChangeKind) -> List[DiffEntry]:
        return [entry for entry in self.entries if entry.kind is kind]

    @property
    def keys(self) -> List[EdgeKey]:
        return [entry.key for entry in self.entries]


def diff_diagrams(d1: Diagram, d2: Diagram) -> DiagramDiff:
    """Edges whose tags differ between ``d1`` and ``d2``."""
    mismatches: List[str] = []
    if d1.universe != d2.universe:
        mismatches.append(
            f"participants {list(d1.universe.names)} vs {list(d2.universe.names)}"
        )
    if d1.theory != d2.theory:
        mismatches.append("algebraic theories differ")
    if mismatches:
        raise StructuralMismatch(mismatches)

    if d1.nodes != d2.nodes:
        ids1 = {node.id: node.object for node in d1.nodes}
        ids2 = {node.id: node.object for node in d2.nodes}
        for node_id in sorted(set(ids1) ^ set(ids2)):
            mismatches.append(f"node {node_id} only in {'first' if node_id in ids1 else 'second'}")
        for node_id in sorted(set(ids1) & set(ids2)):
            if ids1[node_id] != ids2[node_id]:
                mismatches.append(f"node {node_id} object differs")

    keys1 = {edge.key for edge in d1.edges}
    keys2 = {edge.key for edge in d2.edges}
    for key in sorted(keys1 ^ keys2):
        mismatches.append(f"edge {key[0]} -> {key[1]} only in {'first' if key in keys1 else 'second'}")

    entries: List[DiffEntry] = []
    for edge in d1.edges:
        if edge.key not in keys2:
            continue
        other = d2.edge(*edge.key)
        if not d1.theory.arrows_equal(edge.arrow, other.arrow):
            mismatches.append(f"edge {edge.src} -> {edge.dst} arrow differs")
        elif edge.tag != other.tag:
            entries.append(DiffEntry(edge.src, edge.dst, edge.tag, other.tag, label=edge.label))

    if mismatches:
        raise StructuralMismatch(mismatches)
    return DiagramDiff(tuple(entries))


def diff_to_records(diff: DiagramDiff) -> List[Dict[str, Any]]:
    records = []
    for entry in diff:
        record: Dict[str, Any] = {
            "edge": {"src": entry.src, "dst": entry.dst},
            "old": entry.old.members,
            "new": entry.new.members,
        }
        if entry.kind is not None:
            record["kind"] = entry.kind.value
        if entry.label:
            record["label"] = entry.label
        records.append(record)
    return records


def diff_from_records(universe: ParticipantUniverse, records: Any) -> DiagramDiff:
    if not isinstance(records, list):
        raise StructuralMismatch(["recorded diff must be a list"])
    entries = []
    for index, record in enumerate(records):
        try:
            edge = record["edge"]
            kind = record.get("kind")
            entries.append(
                DiffEntry(
                    src=str(edge["src"]),
                    dst=str(edge["dst"]),
                    old=universe.tag(record["old"]),
                    new=universe.tag(record["new"]),
                    kind=ChangeKind(kind) if kind is not None else None,
                    label=record.get("label"),
                )
            )
        except (KeyError, TypeError, ValueError, UniverseError) as exc:
            raise StructuralMismatch([f"recorded diff entry {index} is malformed: {exc}"]) from exc
    return DiagramDiff(tuple(entries))


def diff_from_provenance(d: Diagram) -> DiagramDiff:
    """The diff a leak recorded in ``d.metadata``."""
    leak: Mapping[str, Any] = d.metadata.get("leak") or {}
    if "diff" not in leak:
        raise StructuralMismatch(["document carries no recorded leak diff"])
    return diff_from_records(d.universe, leak["diff"])
