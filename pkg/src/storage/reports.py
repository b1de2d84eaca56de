"""JSON-ready dictionaries and text renderings of analysis results."""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence

from ..analysis.events import EdgeEvent, EventClass, EventReport
from ..analysis.orderings import OrderingResult
from ..analysis.triangulation import Scenario
from ..diagram import CommutationReport, Diagram, Edge, PathRef
from ..ifo import IfoReport
from .codec import diagram_to_dict
from .diff import DiagramDiff, diff_to_records

_COLOURS = {"red": "31", "green": "32", "yellow": "33", "blue": "34"}


def paint(text: str, colour: str, enabled: bool) -> str:
    if not enabled:
        return text
    return f"\033[{_COLOURS[colour]}m{text}\033[0m"


def edge_ref(edge: Edge) -> Dict[str, str]:
    return {"src": edge.src, "dst": edge.dst}


def path_refs(path: PathRef) -> List[Dict[str, str]]:
    return [edge_ref(edge) for edge in path]


def path_chain(d: Diagram, path: PathRef) -> str:
    """``star -[g^bc]-> g^BC -(_)^a-> g^ABC``"""
    parts = [path.src]
    for edge in path:
        parts.append(f"-{d.describe(edge)}-> {edge.dst}")
    return " ".join(parts)


def edge_text(d: Diagram, edge: Edge) -> str:
    return f"{edge.src} -{d.describe(edge)}-> {edge.dst} {edge.tag}"


# ----------------------------------------------------------------------
# Dictionaries
# ----------------------------------------------------------------------
def commutation_to_dict(report: CommutationReport) -> Dict[str, Any]:
    return {
        "ok": report.ok,
        "violations": [
            {"src": v.src, "dst": v.dst, "left": path_refs(v.left), "right": path_refs(v.right)}
            for v in report.violations
        ],
    }


def ifo_to_dict(report: IfoReport, commutation: Optional[CommutationReport] = None) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        "ok": report.ok if commutation is None else report.ok and commutation.ok,
        "violations": [
            {
                "edge": edge_ref(v.edge),
                "path": path_refs(v.path),
                "path_tag": v.path_tag.members,
                "edge_tag": v.edge_tag.members,
                "kind": v.kind.value,
            }
            for v in report.violations
        ],
    }
    if commutation is not None:
        result["commutation"] = commutation_to_dict(commutation)
    return result


def event_to_dict(event: EdgeEvent) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        "edge": edge_ref(event.edge),
        "class": event.cls.value,
        "explained": event.explained.members,
        "newly_informed": event.newly_informed.members,
        "routes": [{"path": path_refs(route.path), "meet": route.meet.members} for route in event.routes],
    }
    if event.announcers:
        record["announcers"] = [tag.members for tag in event.announcers]
    if event.edge.label:
        record["label"] = event.edge.label
    return record


def events_to_dict(report: EventReport) -> Dict[str, Any]:
    return {
        "events": [event_to_dict(event) for event in report.events],
        "summary": {cls.value: len(report.of_class(cls)) for cls in EventClass},
    }


def scenario_to_dict(
    scenario: Scenario, *, file: Optional[str] = None, include_diagram: bool = False
) -> Dict[str, Any]:
    d = scenario.triangulation
    record: Dict[str, Any] = {
        "chords": [list(key) for key in scenario.chords],
        "inserted": [list(key) for key in scenario.inserted],
        "feasible": scenario.feasible,
        "triangles": [
            {"sides": [edge_ref(t.side1), edge_ref(t.side2)], "apex": edge_ref(t.apex), "meet": t.meet.members}
            for t in scenario.triangles
        ],
        "announcements": [
            {
                "edge": edge_ref(a.edge),
                "value": d.describe(a.edge),
                "announcers": a.announcers.members,
                "audience": a.audience.members,
                "newly_informed": a.newly_informed.members,
            }
            for a in scenario.announcements
        ],
        "consequences": diff_to_records(scenario.consequences),
    }
    if file is not None:
        record["file"] = file
    if include_diagram:
        record["diagram"] = diagram_to_dict(d)
    return record


def orderings_to_dict(result: OrderingResult) -> Dict[str, Any]:
    return {
        "count": result.count,
        "events": [list(key) for key in result.events],
        "orderings": [[list(key) for key in order] for order in result.orderings],
        "truncated": result.truncated,
    }


def diff_to_dict(diff: DiagramDiff) -> Dict[str, Any]:
    return {"entries": diff_to_records(diff)}


# ----------------------------------------------------------------------
# Text
# ----------------------------------------------------------------------
def render_check(
    d: Diagram, report: IfoReport, commutation: CommutationReport, colour: bool = False
) -> str:
    lines = []
    verdict = "holds" if report.ok else f"fails ({len(report.violations)} violation(s))"
    lines.append(f"IFO: {paint(verdict, 'green' if report.ok else 'red', colour)}")
    for v in report.violations:
        lines.append(f"  {v.kind.value}: edge {edge_text(d, v.edge)}")
        lines.append(f"    path {path_chain(d, v.path)} meets {v.path_tag}")
    commutes = "commutes" if commutation.ok else f"does not commute ({len(commutation.violations)} pair(s))"
    lines.append(f"algebra: {paint(commutes, 'green' if commutation.ok else 'red', colour)}")
    for v in commutation.violations:
        lines.append(f"  {v.src} -> {v.dst}: {path_chain(d, v.left)}  vs  {path_chain(d, v.right)}")
    return "\n".join(lines) + "\n"


def render_events(d: Diagram, report: EventReport, colour: bool = False) -> str:
    lines = []
    for event in report.events:
        name = event.cls.value
        if event.cls is EventClass.ANNOUNCEMENT:
            name = paint(name, "blue", colour)
            announcers = " or ".join(str(tag) for tag in event.announcers) or "nobody"
            detail = f" by {announcers} to {event.newly_informed}"
        elif event.cls is EventClass.COMPUTATION:
            detail = " via " + ", ".join(str(route.meet) for route in event.routes if not route.meet.is_bottom)
        else:
            detail = ""
        lines.append(f"{edge_text(d, event.edge)}: {name}{detail}")
    return "\n".join(lines) + "\n"


def render_scenarios(scenarios: Sequence[Scenario], files: Sequence[Optional[str]] = (), colour: bool = False) -> str:
    lines = [f"{len(scenarios)} scenario(s)"]
    for index, scenario in enumerate(scenarios, start=1):
        d = scenario.triangulation
        chords = ", ".join(f"{src}->{dst}" for src, dst in scenario.chords) or "none"
        flag = "" if scenario.feasible else " " + paint("(infeasible)", "yellow", colour)
        target = files[index - 1] if index - 1 < len(files) and files[index - 1] else ""
        lines.append(f"scenario {index}: chords {chords}{flag}{' -> ' + target if target else ''}")
        for a in scenario.announcements:
            lines.append(f"  announce {d.describe(a.edge)} by {a.announcers} to {a.audience}")
    return "\n".join(lines) + "\n"


def render_orderings(result: OrderingResult) -> str:
    lines = [f"{result.count} ordering(s)"]
    for order in result.orderings:
        lines.append("  " + " < ".join(dst for _, dst in order))
    if result.truncated:
        lines.append(f"  ... {result.count - len(result.orderings)} more")
    return "\n".join(lines) + "\n"


def render_diff(diff: DiagramDiff) -> str:
    if not len(diff):
        return "no tag changes\n"
    lines = []
    for entry in diff:
        kind = f" ({entry.kind.value})" if entry.kind is not None else ""
        name = f" [{entry.label}]" if entry.label else ""
        lines.append(f"{entry.src} -> {entry.dst}{name}: {entry.old} -> {entry.new}{kind}")
    return "\n".join(lines) + "\n"
