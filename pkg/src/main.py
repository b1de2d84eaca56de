"""Command-line front-end: one subcommand per analysis."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence

from . import config
from .algebra.base import AlgebraError
from .analysis import (
    CountExplosion,
    LeakRuleError,
    TriangulationError,
    apply_leak,
    classify_events,
    enumerate_orderings,
    enumerate_triangulations,
    parse_rule,
    restrict_view,
    rules_from_json,
)
from .diagram import Diagram, DiagramError, check_commutes
from .ifo import NoIfoAbove, NotIfo, check_ifo, complete_ifo
from .lattice import UniverseError
from .protocols import GENERATORS, BadParams, generate, parse_keys
from .storage import (
    DiagramSyntaxError,
    SchemaError,
    StructuralMismatch,
    diff_diagrams,
    export_dot,
    parse_diagram,
    serialize_diagram,
)
from .storage import reports
from .storage.diff import diff_from_provenance
from .utils.logging import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------
# I/O helpers
# ----------------------------------------------------------------------
def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str) -> Diagram:
    return parse_diagram(_read_text(path))


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(args: argparse.Namespace, payload: Any) -> None:
    _emit(args, json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _colour_enabled() -> bool:
    return "NO_COLOR" not in os.environ and sys.stdout.isatty()


def _participants(d: Diagram, raw: str):
    names = [part.strip() for part in raw.strip().strip("{}").split(",") if part.strip()]
    return d.universe.tag(names)


def _edge_key(raw: str):
    src, sep, dst = raw.partition(":")
    if not sep or not src or not dst:
        raise UsageError(f"--edge expects SRC:DST, got {raw!r}")
    return src, dst


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------
def _cmd_gen(args: argparse.Namespace) -> int:
    keys = parse_keys(args.keys) if args.keys else None
    eve = [name.strip() for name in args.eve.split(",") if name.strip()] if args.eve is not None else None
    d = generate(
        args.generator,
        p=args.p,
        g=args.g,
        keys=keys,
        eavesdroppers=eve,
        n=args.n,
        k=args.k,
        preset=args.preset,
    )
    _emit(args, serialize_diagram(d))
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    d = _load(args.input)
    report = check_ifo(d)
    commutation = check_commutes(d)
    if args.format == "json":
        _emit_json(args, reports.ifo_to_dict(report, commutation))
    else:
        _emit(args, reports.render_check(d, report, commutation, _colour_enabled()))
    return EXIT_OK if report.ok and commutation.ok else EXIT_NEGATIVE


def _cmd_complete(args: argparse.Namespace) -> int:
    _emit(args, serialize_diagram(complete_ifo(_load(args.input))))
    return EXIT_OK


def _cmd_view(args: argparse.Namespace) -> int:
    d = _load(args.input)
    _emit(args, serialize_diagram(restrict_view(d, _participants(d, args.who))))
    return EXIT_OK


def _cmd_leak(args: argparse.Namespace) -> int:
    d = _load(args.input)
    rules = [parse_rule(text, d) for text in args.rule or []]
    if args.rules_file:
        try:
            data = json.loads(_read_text(args.rules_file))
        except json.JSONDecodeError as exc:
            raise LeakRuleError(f"{args.rules_file}: {exc}") from exc
        rules.extend(rules_from_json(data, d))
    if not rules:
        raise UsageError("leak needs at least one --rule or a --rules-file")
    leaked, _ = apply_leak(d, rules)
    _emit(args, serialize_diagram(leaked))
    return EXIT_OK


def _cmd_events(args: argparse.Namespace) -> int:
    d = _load(args.input)
    report = classify_events(d)
    if args.format == "json":
        _emit_json(args, reports.events_to_dict(report))
    else:
        _emit(args, reports.render_events(d, report, _colour_enabled()))
    return EXIT_OK


def _cmd_triangulate(args: argparse.Namespace) -> int:
    d = _load(args.input)
    scenarios = enumerate_triangulations(d, _edge_key(args.edge), args.policy)
    files: List[Optional[str]] = []
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for index, scenario in enumerate(scenarios, start=1):
            path = out_dir / f"scenario-{index:02d}.json"
            path.write_text(serialize_diagram(scenario.triangulation), encoding="utf-8")
            files.append(str(path))
    if args.format == "json":
        _emit_json(
            args,
            {
                "target": dict(zip(("src", "dst"), _edge_key(args.edge))),
                "count": len(scenarios),
                "scenarios": [
                    reports.scenario_to_dict(
                        scenario,
                        file=files[i] if files else None,
                        include_diagram=not files,
                    )
                    for i, scenario in enumerate(scenarios)
                ],
            },
        )
    else:
        _emit(args, reports.render_scenarios(scenarios, files, _colour_enabled()))
    return EXIT_OK


def _cmd_orderings(args: argparse.Namespace) -> int:
    result = enumerate_orderings(_load(args.input), args.limit)
    if args.format == "json":
        _emit_json(args, reports.orderings_to_dict(result))
    else:
        _emit(args, reports.render_orderings(result))
    return EXIT_OK


def _cmd_dot(args: argparse.Namespace) -> int:
    d = _load(args.input)
    annotations = None
    if args.annotate == "ifo":
        annotations = check_ifo(d)
    elif args.annotate == "events":
        annotations = classify_events(d)
    _emit(args, export_dot(d, annotations))
    return EXIT_OK


def _cmd_diff(args: argparse.Namespace) -> int:
    first = _load(args.input)
    diff = diff_diagrams(first, _load(args.other)) if args.other else diff_from_provenance(first)
    if args.format == "json":
        _emit_json(args, reports.diff_to_dict(diff))
    else:
        _emit(args, reports.render_diff(diff))
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="Write to this file instead of stdout.")
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="Report format (default: json)."
    )

    parser = argparse.ArgumentParser(
        prog="ae-diagrams",
        description="Check, complete and analyse algebraic-epistemic protocol diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str, with_input: bool = True):
        command = sub.add_parser(name, parents=[common], help=help_text)
        if with_input:
            command.add_argument("input", nargs="?", default="-", help="Diagram document, or - for stdin.")
        command.set_defaults(handler=handler)
        return command

    gen = add("gen", _cmd_gen, "Generate a protocol diagram.", with_input=False)
    gen.add_argument("generator", choices=sorted(GENERATORS))
    gen.add_argument("--p", type=int, help=f"Prime modulus (default {config.DEFAULT_PRIME}).")
    gen.add_argument("--g", type=int, help=f"Public root (default {config.DEFAULT_ROOT}).")
    gen.add_argument("--keys", help="Private exponents, e.g. A=3,B=4.")
    gen.add_argument("--eve", help="Comma separated eavesdroppers (default from AE_EAVESDROPPERS).")
    gen.add_argument("--n", type=int, help="Number of key owners.")
    gen.add_argument("--k", type=int, help="Subset size for dh-nk.")
    gen.add_argument("--preset", help="CAKE preset (default cake-matrix-demo).")

    add("check", _cmd_check, "Check the IFO condition and algebraic commutation.")
    add("complete", _cmd_complete, "Compute the least IFO diagram above the input.")

    view = add("view", _cmd_view, "Restrict to the edges a set of participants can use.")
    view.add_argument("--who", required=True, help="Participants, e.g. A,B.")

    leak = add("leak", _cmd_leak, "Apply leak rules and complete.")
    leak.add_argument("--rule", action="append", help="pow:<key>+<who>, elem:<name>+<who> or tag:{A}+<who>.")
    leak.add_argument("--rules-file", help="JSON list of leak rules.")

    add("events", _cmd_events, "Classify edges as primitive, computation or announcement.")

    tri = add("triangulate", _cmd_triangulate, "Enumerate triangulation scenarios for an edge.")
    tri.add_argument("--edge", required=True, help="Target edge as SRC:DST.")
    tri.add_argument("--policy", choices=("audience", "minimal"), help="Tag policy for inserted chords.")
    tri.add_argument("--out-dir", help="Write one diagram document per scenario here.")

    orderings = add("orderings", _cmd_orderings, "Count and list valid event orderings.")
    orderings.add_argument("--limit", type=int, help=f"Orderings to list (default {config.ORDERING_LIST_LIMIT}).")

    dot = add("dot", _cmd_dot, "Export Graphviz DOT.")
    dot.add_argument("--annotate", choices=("ifo", "events"), help="Highlight violations or announcements.")

    diff = add("diff", _cmd_diff, "Tag differences between two diagrams, or the leak recorded in one.")
    diff.add_argument("other", nargs="?", help="Second diagram document.")

    return parser


_NEGATIVE = (NotIfo, NoIfoAbove)
_BAD_INPUT = (
    UsageError,
    DiagramSyntaxError,
    SchemaError,
    DiagramError,
    AlgebraError,
    UniverseError,
    BadParams,
    LeakRuleError,
    TriangulationError,
    CountExplosion,
    StructuralMismatch,
    OSError,
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    try:
        return args.handler(args)
    except _NEGATIVE as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except _BAD_INPUT as exc:
        logger.debug("cli.failed", extra={"command": args.command, "error": type(exc).__name__})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
