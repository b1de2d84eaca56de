"""Participant views and leak updates."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .. import config
from ..algebra.base import AlgebraArrow, AlgebraError, Pow
from ..diagram import Diagram, Edge, EmptyView
from ..ifo import complete_ifo
from ..lattice import Tag, UniverseError
from ..storage.diff import ChangeKind, DiagramDiff, DiffEntry, diff_to_records
from ..utils.logging import get_logger
from ..utils.notifications import send_exposure_alert

logger = get_logger(__name__)

_RULE_PATTERN = re.compile(r"^(?P<kind>pow|elem|tag):(?P<match>[^+]+)\+(?P<add>.+)$")


class LeakRuleError(ValueError):
    """Raised for leak rules that cannot be parsed or resolved."""


@dataclass(frozen=True)
class LeakRule:
    """Union ``add`` into every edge whose arrow and/or current tag match."""

    add: Tag
    arrow: Optional[AlgebraArrow] = None
    tag: Optional[Tag] = None
    source: Optional[str] = None

    def matches(self, d: Diagram, edge: Edge) -> bool:
        if self.arrow is not None:
            if (self.arrow.source, self.arrow.target) != (edge.arrow.source, edge.arrow.target):
                return False
            if not d.theory.arrows_equal(self.arrow, edge.arrow):
                return False
        if self.tag is not None and edge.tag != self.tag:
            return False
        return True

    def describe(self) -> str:
        return self.source or f"match arrow={self.arrow} tag={self.tag} add={self.add}"


def restrict_view(d: Diagram, who: Tag) -> Diagram:
    """Keep the edges whose tag contains ``who``; all nodes stay."""
    if who.universe != d.universe:
        raise UniverseError("View participants are over a different universe")
    if who.is_bottom:
        raise EmptyView("A view needs at least one participant")
    edges = tuple(edge for edge in d.edges if who <= edge.tag)
    return replace(d, edges=edges, metadata={**d.metadata, "view": who.members})


def _split_names(raw: str) -> List[str]:
    return [part.strip() for part in raw.strip().strip("{}").split(",") if part.strip()]


def _resolve_exponent(d: Diagram, key: str) -> int:
    key = key.strip()
    if re.fullmatch(r"\d+", key):
        return int(key)
    keys: Mapping[str, Any] = (d.metadata.get("params") or {}).get("keys") or {}
    for owner, exponent in keys.items():
        if owner.lower() == key.lower():
            return int(exponent)
    raise LeakRuleError(f"Cannot resolve key {key!r}; known key owners: {sorted(keys)}")


def _normalize(d: Diagram, arrow: AlgebraArrow) -> AlgebraArrow:
    try:
        return d.theory.normalize(arrow)
    except AlgebraError as exc:
        raise LeakRuleError(f"Rule arrow does not fit the {d.theory.kind} theory: {exc}") from exc


def _tag(d: Diagram, names: Iterable[str]) -> Tag:
    try:
        return d.universe.tag(names)
    except UniverseError as exc:
        raise LeakRuleError(str(exc)) from exc


def parse_rule(text: str, d: Diagram) -> LeakRule:
    """Parse ``pow:<key>+<who>``, ``elem:<name>+<who>`` or ``tag:{A}+<who>``.

    ``<key>`` is an exponent or a key owner's name looked up in the document's
    ``params.keys``; ``<who>`` is a comma separated participant list.
    """
    match = _RULE_PATTERN.match(text.strip())
    if not match:
        raise LeakRuleError(f"Malformed leak rule {text!r}; expected e.g. pow:a+E or tag:{{A}}+E")
    kind, target = match["kind"], match["match"].strip()
    add = _tag(d, _split_names(match["add"]))
    if kind == "pow":
        return LeakRule(add=add, arrow=_normalize(d, Pow(_resolve_exponent(d, target))), source=text)
    if kind == "elem":
        name_lookup = getattr(d.theory, "elem", None)
        if name_lookup is None:
            raise LeakRuleError(f"elem rules need a monoid theory, not {d.theory.kind}")
        try:
            return LeakRule(add=add, arrow=name_lookup(target), source=text)
        except AlgebraError as exc:
            raise LeakRuleError(str(exc)) from exc
    return LeakRule(add=add, tag=_tag(d, _split_names(target)), source=text)


def rules_from_json(data: Any, d: Diagram) -> List[LeakRule]:
    """Rules from ``[{"match": {"arrow": {...}, "tag": [...]}, "add": [...]}]``."""
    if not isinstance(data, list):
        raise LeakRuleError("A leak rule file must hold a JSON list")
    rules = []
    for index, item in enumerate(data):
        if not isinstance(item, Mapping) or not isinstance(item.get("match"), Mapping):
            raise LeakRuleError(f"rule {index}: expected an object with 'match' and 'add'")
        match = item["match"]
        arrow = None
        if "arrow" in match:
            arrow_data = dict(match["arrow"])
            if arrow_data.get("op") == "pow" and "key" in arrow_data:
                arrow_data = {"op": "pow", "exp": _resolve_exponent(d, str(arrow_data["key"]))}
            try:
                arrow = d.theory.arrow_from_dict(arrow_data)
            except AlgebraError as exc:
                raise LeakRuleError(f"rule {index}: {exc}") from exc
        tag = _tag(d, match["tag"]) if "tag" in match else None
        if arrow is None and tag is None:
            raise LeakRuleError(f"rule {index}: 'match' needs an 'arrow' or a 'tag'")
        rules.append(
            LeakRule(add=_tag(d, item.get("add", [])), arrow=arrow, tag=tag, source=f"rule {index}")
        )
    return rules


def _eavesdroppers(d: Diagram) -> Tag:
    names = (d.metadata.get("params") or {}).get("eavesdroppers") or config.DEFAULT_EAVESDROPPERS
    return d.universe.tag(name for name in names if name in d.universe)


def apply_leak(d: Diagram, rules: Sequence[LeakRule]) -> Tuple[Diagram, DiagramDiff]:
    """Add the leaked knowledge, complete, and report every resulting tag change."""
    substituted: Dict[Tuple[str, str], Tag] = {}
    for edge in d.edges:
        grown = edge.tag
        for rule in rules:
            if rule.matches(d, edge):
                grown = grown | rule.add
        if grown != edge.tag:
            substituted[edge.key] = grown

    completed = complete_ifo(d.with_tags(substituted))

    entries: List[DiffEntry] = []
    eavesdroppers = _eavesdroppers(d)
    for edge in d.edges:
        after_rules = substituted.get(edge.key, edge.tag)
        final = completed.edge(*edge.key).tag
        if after_rules != edge.tag:
            entries.append(DiffEntry(edge.src, edge.dst, edge.tag, after_rules, ChangeKind.SUBSTITUTION, edge.label))
        if final != after_rules:
            entries.append(DiffEntry(edge.src, edge.dst, after_rules, final, ChangeKind.CONSEQUENCE, edge.label))
            exposed = (final - after_rules) & eavesdroppers
            if config.EXPOSURE_ALERTS_ENABLED and not exposed.is_bottom:
                send_exposure_alert(
                    src=edge.src,
                    dst=edge.dst,
                    exposed_to=exposed.members,
                    label=edge.label,
                    rules=[rule.describe() for rule in rules],
                )

    diff = DiagramDiff(tuple(entries))
    logger.info(
        "analysis.leak",
        extra={
            "rules": len(rules),
            "substitutions": len(diff.of_kind(ChangeKind.SUBSTITUTION)),
            "consequences": len(diff.of_kind(ChangeKind.CONSEQUENCE)),
        },
    )
    leaked = completed.with_metadata(
        leak={"rules": [rule.describe() for rule in rules], "diff": diff_to_records(diff)}
    )
    return leaked, diff
