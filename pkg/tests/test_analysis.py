import pytest

from src import config
from src.algebra.base import AlgebraObject, Pow
from src.algebra.modexp import ModExpTheory
from src.analysis import (
    AmbiguousPolygon,
    LeakRuleError,
    NoPolygon,
    TriangulationError,
    apply_leak,
    classify_events,
    enumerate_orderings,
    enumerate_triangulations,
    parse_rule,
    restrict_view,
    rules_from_json,
)
from src.analysis import views
from src.analysis.orderings import CountExplosion, event_dependencies, is_linear_extension
from src.analysis.triangulation import catalan, polygon_triangulations
from src.diagram import EmptyView, Edge, Node, build_diagram
from src.ifo import NotIfo, check_ifo, complete_ifo
from src.lattice import ParticipantUniverse
from src.protocols import gen_dh_pairwise, generate, make_params
from src.storage.diff import ChangeKind

# ----------------------------------------------------------------------
# Views
# ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "who, expected",
    [
        (["A", "B", "C"], [("star", "g"), ("star", "g^ABC")]),
        (["A", "B"], [("star", "g"), ("star", "g^A"), ("star", "g^ABC"), ("star", "g^CA")]),
    ],
)
def test_ring_views(ring_dh, who, expected) -> None:
    view = restrict_view(ring_dh, ring_dh.universe.tag(who))
    assert [edge.key for edge in view.edges] == expected
    assert len(view.nodes) == len(ring_dh.nodes)
    assert view.metadata["view"] == who


@pytest.mark.parametrize("who, count", [(["E"], 7), (["A"], 9), (["C"], 9)])
def test_ring_view_sizes(ring_dh, who, count) -> None:
    view = restrict_view(ring_dh, ring_dh.universe.tag(who))
    assert len(view.edges) == count
    assert check_ifo(view).ok


def test_empty_view_is_rejected(ring_dh) -> None:
    with pytest.raises(EmptyView):
        restrict_view(ring_dh, ring_dh.universe.bottom)


# ----------------------------------------------------------------------
# Leaks
# ----------------------------------------------------------------------


@pytest.fixture
def generated_ring():
    return generate("dh-ring")


def test_leaking_a_key_to_the_eavesdropper(generated_ring, leaked_ring) -> None:
    leaked, diff = apply_leak(generated_ring, [parse_rule("pow:a+E", generated_ring)])

    substitutions = diff.of_kind(ChangeKind.SUBSTITUTION)
    consequences = diff.of_kind(ChangeKind.CONSEQUENCE)
    assert sorted(entry.key for entry in substitutions) == [
        ("g", "g^A"),
        ("g^BC", "g^ABC"),
        ("g^C", "g^CA"),
    ]
    (consequence,) = consequences
    assert consequence.key == ("star", "g^ABC")
    assert consequence.gained == leaked.universe.tag(["E"])
    assert consequence.label == "[g^abc]"
    assert leaked == complete_ifo(leaked_ring)
    assert leaked.metadata["leak"]["rules"] == ["pow:a+E"]
    assert len(leaked.metadata["leak"]["diff"]) == 4


@pytest.mark.parametrize("rule", ["pow:A+E", "pow:3+E", "tag:{A}+E"])
def test_equivalent_rule_spellings(generated_ring, rule) -> None:
    _, diff = apply_leak(generated_ring, [parse_rule(rule, generated_ring)])
    assert len(diff) == 4


def test_rules_from_json(generated_ring) -> None:
    rules = rules_from_json([{"match": {"arrow": {"op": "pow", "key": "a"}}, "add": ["E"]}], generated_ring)
    _, diff = apply_leak(generated_ring, rules)
    assert len(diff.of_kind(ChangeKind.CONSEQUENCE)) == 1


def test_leak_that_changes_nothing(generated_ring) -> None:
    leaked, diff = apply_leak(generated_ring, [parse_rule("tag:{A,B,C}+A", generated_ring)])
    assert len(diff) == 0
    assert leaked == generated_ring


def test_exposure_alert_fires_for_eavesdroppers(generated_ring, monkeypatch: pytest.MonkeyPatch) -> None:
    alerts = []

    def fake_alert(**kwargs):
        alerts.append(kwargs)

    monkeypatch.setattr(views, "send_exposure_alert", fake_alert)
    apply_leak(generated_ring, [parse_rule("pow:a+E", generated_ring)])
    assert alerts == [
        {
            "src": "star",
            "dst": "g^ABC",
            "exposed_to": ["E"],
            "label": "[g^abc]",
            "rules": ["pow:a+E"],
        }
    ]

    alerts.clear()
    monkeypatch.setattr(config, "EXPOSURE_ALERTS_ENABLED", False)
    apply_leak(generated_ring, [parse_rule("pow:a+E", generated_ring)])
    assert alerts == []


def test_leaking_a_pairwise_key_reaches_two_secrets() -> None:
    d = gen_dh_pairwise(make_params(3, p=11, g=2, keys={"A": 3, "B": 4, "C": 7}))
    universe = d.universe
    leaked, diff = apply_leak(d, [parse_rule("pow:b+E", d)])

    assert sorted(entry.key for entry in diff.of_kind(ChangeKind.SUBSTITUTION)) == [
        ("g", "g^B"),
        ("g^A", "g^AB"),
        ("g^C", "g^BC"),
    ]
    consequences = diff.of_kind(ChangeKind.CONSEQUENCE)
    assert sorted(entry.key for entry in consequences) == [("star", "g^AB"), ("star", "g^BC")]
    assert all(entry.gained == universe.tag(["E"]) for entry in consequences)
    assert leaked.edge("star", "g^AC").tag == universe.tag(["A", "C"])
    assert check_ifo(leaked).ok


def test_pair_view_of_pairwise_dh_is_the_bipartite_view(bipartite_dh) -> None:
    pairwise = gen_dh_pairwise(make_params(3, p=11, g=2, keys={"A": 3, "B": 4, "C": 7}))
    view = restrict_view(pairwise, pairwise.universe.tag(["A", "B"]))
    bipartite_view = restrict_view(bipartite_dh, bipartite_dh.universe.tag(["A", "B"]))

    shared_nodes = {node.id for node in bipartite_dh.nodes}
    restricted = [
        (edge.key, edge.arrow)
        for edge in view.edges
        if edge.src in shared_nodes and edge.dst in shared_nodes
    ]
    assert restricted == [(edge.key, edge.arrow) for edge in bipartite_view.edges]
    assert [key for key, _ in restricted] == [("star", "g"), ("star", "g^A"), ("star", "g^AB"), ("star", "g^B")]
    assert view.edge("star", "g^AB").tag == pairwise.universe.tag(["A", "B"])


@pytest.mark.parametrize("rule", ["pow:zz+E", "nonsense", "tag:{A}+Q", "elem:alpha1+E"])
def test_bad_rules_are_rejected(generated_ring, rule) -> None:
    with pytest.raises(LeakRuleError):
        parse_rule(rule, generated_ring)


def test_bad_rule_files_are_rejected(generated_ring) -> None:
    with pytest.raises(LeakRuleError):
        rules_from_json({"match": {}}, generated_ring)
    with pytest.raises(LeakRuleError):
        rules_from_json([{"match": {}, "add": ["E"]}], generated_ring)


# ----------------------------------------------------------------------
# Events
# ----------------------------------------------------------------------


def test_bipartite_events(bipartite_dh) -> None:
    report = classify_events(bipartite_dh)
    universe = bipartite_dh.universe

    assert [event.key for event in report.announcements] == [("star", "g^A"), ("star", "g^B")]
    announce_a = report.event("star", "g^A")
    assert announce_a.announcers == (universe.tag(["A"]),)
    assert announce_a.newly_informed == universe.tag(["B", "E"])

    (secret,) = report.computations
    assert secret.key == ("star", "g^AB")
    assert secret.explained == universe.tag(["A", "B"])
    assert len(report.primitives) == 5


def test_ring_events(ring_dh) -> None:
    report = classify_events(ring_dh)
    assert len(report.announcements) == 6
    assert [event.key for event in report.computations] == [("star", "g^ABC")]
    assert len(report.primitives) == 10
    announce_ab = report.event("star", "g^AB")
    assert announce_ab.announcers == (ring_dh.universe.tag(["B"]),)
    assert announce_ab.newly_informed == ring_dh.universe.tag(["C", "E"])


def test_cake_events() -> None:
    d = generate("cake")
    report = classify_events(d)
    universe = d.universe
    assert {event.key: event.announcers for event in report.announcements} == {
        ("A1", "A2"): (universe.tag(["B"]),),
        ("B1", "B2"): (universe.tag(["A"]),),
    }
    assert [event.key for event in report.computations] == [("start", "end")]


def test_events_require_ifo(leaked_ring) -> None:
    with pytest.raises(NotIfo):
        classify_events(leaked_ring)


# ----------------------------------------------------------------------
# Triangulation
# ----------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 11))
def test_polygon_triangulation_counts(n: int) -> None:
    assert len(polygon_triangulations(n)) == catalan(n - 1)
    assert all(len(triangles) == n - 1 for triangles in polygon_triangulations(n))


def test_catalan_numbers() -> None:
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_square_has_five_scenarios(square) -> None:
    scenarios = enumerate_triangulations(square, ("n0", "n4"))
    assert len(scenarios) == 5
    assert all(scenario.feasible for scenario in scenarios)
    assert all(check_ifo(scenario.triangulation).ok for scenario in scenarios)
    assert all(len(scenario.triangles) == 3 for scenario in scenarios)


def test_scenario_announcing_both_halves(square) -> None:
    scenarios = enumerate_triangulations(square, ("n0", "n4"))
    scenario = next(s for s in scenarios if s.chords == (("n0", "n2"), ("n2", "n4")))
    d = scenario.triangulation
    universe = square.universe

    assert scenario.inserted == (("n0", "n2"), ("n2", "n4"))
    assert d.edge("n0", "n2").label == "ba"
    assert d.edge("n0", "n2").arrow == Pow(6)
    assert d.edge("n2", "n4").label == "dc"
    assert [(a.edge.label, a.announcers) for a in scenario.announcements] == [
        ("ba", universe.tag(["W"])),
        ("dc", universe.tag(["Y"])),
    ]
    assert scenario.announcements[0].newly_informed == universe.tag(["V", "X", "Y", "Z"])


def test_existing_chords_are_kept(square_with_chord) -> None:
    scenarios = enumerate_triangulations(square_with_chord, ("n0", "n4"))
    assert len(scenarios) == 2
    for scenario in scenarios:
        assert ("n1", "n3") in scenario.chords
        assert ("n1", "n3") not in scenario.inserted


def test_minimal_policy_leaves_the_target_unexplained(square) -> None:
    scenarios = enumerate_triangulations(square, ("n0", "n4"), policy="minimal")
    assert len(scenarios) == 5
    assert not any(scenario.feasible for scenario in scenarios)
    fan = next(s for s in scenarios if s.chords == (("n0", "n2"), ("n0", "n3")))
    assert fan.triangulation.edge("n0", "n2").tag == square.universe.tag(["W"])
    assert fan.triangulation.edge("n0", "n3").tag.is_bottom


def test_policy_comes_from_config(square, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config, "CHORD_TAG_POLICY", "minimal")
    assert not any(s.feasible for s in enumerate_triangulations(square, ("n0", "n4")))
    with pytest.raises(TriangulationError):
        enumerate_triangulations(square, ("n0", "n4"), policy="generous")


def test_chain_polygons_match_catalan() -> None:
    theory = ModExpTheory(101)
    universe = ParticipantUniverse.of(["A"])
    for n in range(2, 6):
        nodes = [Node(f"v{i}", AlgebraObject.CARRIER) for i in range(n + 1)]
        edges = [Edge(f"v{i}", f"v{i + 1}", Pow(3), universe.top) for i in range(n)]
        edges.append(Edge("v0", f"v{n}", Pow(3**n), universe.top))
        d = build_diagram(universe, theory, nodes, edges)
        assert len(enumerate_triangulations(d, ("v0", f"v{n}"))) == catalan(n - 1)


def test_edge_without_polygon(square) -> None:
    with pytest.raises(NoPolygon):
        enumerate_triangulations(square, ("n0", "n1"))


def test_two_disjoint_routes_are_ambiguous() -> None:
    theory = ModExpTheory(7)
    universe = ParticipantUniverse.of(["A"])
    top = universe.top
    d = build_diagram(
        universe,
        theory,
        [Node(node_id, AlgebraObject.CARRIER) for node_id in ("u", "x", "y", "v")],
        [
            Edge("u", "x", Pow(2), top),
            Edge("x", "v", Pow(2), top),
            Edge("u", "y", Pow(2), top),
            Edge("y", "v", Pow(2), top),
            Edge("u", "v", Pow(4), top),
        ],
    )
    with pytest.raises(AmbiguousPolygon) as excinfo:
        enumerate_triangulations(d, ("u", "v"))
    assert len(excinfo.value.paths) == 2


# ----------------------------------------------------------------------
# Orderings
# ----------------------------------------------------------------------


def test_bipartite_orderings(bipartite_dh) -> None:
    result = enumerate_orderings(bipartite_dh)
    assert result.count == 2
    assert len(result.orderings) == 2
    assert not result.truncated
    assert all(order[0] == ("star", "g") and order[-1] == ("star", "g^AB") for order in result.orderings)


def test_ring_orderings(ring_dh) -> None:
    result = enumerate_orderings(ring_dh, limit=5)
    assert result.count == 90
    assert len(result.orderings) == 5
    assert result.truncated
    assert list(result.orderings) == sorted(result.orderings)

    nine_step = [("star", dst) for dst in ["g", "g^A", "g^B", "g^C", "g^CA", "g^AB", "g^BC", "g^ABC"]]
    assert is_linear_extension(result.dependencies, nine_step)
    assert not is_linear_extension(result.dependencies, list(reversed(nine_step)))


def test_ring_dependencies(ring_dh) -> None:
    dependencies = event_dependencies(ring_dh)
    assert dependencies[("star", "g")] == frozenset()
    assert dependencies[("star", "g^AB")] == {("star", "g"), ("star", "g^A")}
    assert len(dependencies[("star", "g^ABC")]) == 7


def test_ordering_count_is_bounded(ring_dh, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config, "MAX_ORDERINGS", 10)
    with pytest.raises(CountExplosion):
        enumerate_orderings(ring_dh)


def test_orderings_require_ifo(leaked_ring) -> None:
    with pytest.raises(NotIfo):
        enumerate_orderings(leaked_ring)
