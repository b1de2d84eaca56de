import pytest

from src import config
from src.algebra.base import AlgebraObject, Elem, Pow, Select
from src.algebra.modexp import ModExpTheory
from src.diagram import (
    CycleDetected,
    DuplicateNodeId,
    Edge,
    Node,
    ParallelEdge,
    PathExplosion,
    SelfLoop,
    TypeMismatch,
    UnknownNode,
    all_paths,
    build_diagram,
    check_commutes,
    diagram_leq,
    parallel_paths,
    path_label,
)
from src.lattice import ParticipantUniverse, UniverseError

THEORY = ModExpTheory(7)
UNIVERSE = ParticipantUniverse.of(["A", "B", "E"])
CARRIER = AlgebraObject.CARRIER
UNIT = AlgebraObject.UNIT


def _nodes(*ids: str):
    return [Node(node_id, UNIT if node_id == "u" else CARRIER) for node_id in ids]


def test_bipartite_dh_shape(bipartite_dh) -> None:
    assert [node.id for node in bipartite_dh.nodes] == ["g", "g^A", "g^AB", "g^B", "star"]
    assert len(bipartite_dh.edges) == 8
    assert bipartite_dh.edge("star", "g^AB").arrow == Select(4)
    assert bipartite_dh.edge("star", "g^A").arrow == Select(8)
    assert bipartite_dh.edge("star", "g^B").arrow == Select(5)


def test_edges_are_kept_in_canonical_order(bipartite_dh) -> None:
    keys = [edge.key for edge in bipartite_dh.edges]
    assert keys == sorted(keys)


def test_all_paths_to_shared_secret(bipartite_dh) -> None:
    paths = all_paths(bipartite_dh, "star", "g^AB")
    assert len(paths) == 5
    assert [path.keys for path in paths] == sorted(path.keys for path in paths)
    assert sum(1 for path in paths if len(path) == 1) == 1
    assert len(parallel_paths(bipartite_dh, bipartite_dh.edge("star", "g^AB"))) == 4


def test_all_paths_edge_cases(bipartite_dh) -> None:
    assert all_paths(bipartite_dh, "g^AB", "star") == []
    assert all_paths(bipartite_dh, "g", "g") == []
    with pytest.raises(UnknownNode):
        all_paths(bipartite_dh, "nowhere", "g")


def test_path_explosion_is_reported(bipartite_dh, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config, "MAX_PATHS", 2)
    with pytest.raises(PathExplosion):
        all_paths(bipartite_dh, "star", "g^AB")
    assert len(all_paths(bipartite_dh, "star", "g^AB", cap=10)) == 5


def test_path_label_composes_arrows_and_meets_tags(bipartite_dh) -> None:
    path = next(p for p in all_paths(bipartite_dh, "star", "g^AB") if p.nodes == ("star", "g", "g^A", "g^AB"))
    arrow, tag = path_label(bipartite_dh, path)
    assert arrow == Select(4)
    assert tag.is_bottom

    path = next(p for p in all_paths(bipartite_dh, "star", "g^AB") if p.nodes == ("star", "g^A", "g^AB"))
    assert path_label(bipartite_dh, path) == (Select(4), bipartite_dh.universe.tag(["B"]))


def test_diamond_has_two_paths() -> None:
    top = UNIVERSE.top
    d = build_diagram(
        UNIVERSE,
        THEORY,
        _nodes("w", "x", "y", "z"),
        [
            Edge("w", "x", Pow(2), top),
            Edge("w", "y", Pow(3), top),
            Edge("x", "z", Pow(3), top),
            Edge("y", "z", Pow(2), top),
        ],
    )
    assert [path.nodes for path in all_paths(d, "w", "z")] == [("w", "x", "z"), ("w", "y", "z")]
    assert check_commutes(d).ok


def test_non_commuting_diagram_reports_a_witness() -> None:
    top = UNIVERSE.top
    d = build_diagram(
        UNIVERSE,
        THEORY,
        _nodes("u", "x", "y"),
        [
            Edge("u", "y", Select(2), top),
            Edge("u", "x", Select(3), top),
            Edge("x", "y", Pow(1), top),
        ],
    )
    report = check_commutes(d)
    assert not report.ok
    (violation,) = report.violations
    assert (violation.src, violation.dst) == ("u", "y")
    assert {violation.left.keys, violation.right.keys} == {(("u", "y"),), (("u", "x"), ("x", "y"))}


@pytest.mark.parametrize(
    "nodes, edges, error",
    [
        (["x", "x"], [], DuplicateNodeId),
        (["x"], [Edge("x", "y", Pow(2), UNIVERSE.top)], UnknownNode),
        (["x"], [Edge("x", "x", Pow(2), UNIVERSE.top)], SelfLoop),
        (["x", "y"], [Edge("x", "y", Pow(2), UNIVERSE.top), Edge("x", "y", Pow(3), UNIVERSE.top)], ParallelEdge),
        (["x", "y"], [Edge("x", "y", Select(2), UNIVERSE.top)], TypeMismatch),
        (["u", "y"], [Edge("u", "y", Pow(2), UNIVERSE.top)], TypeMismatch),
        (["x", "y"], [Edge("x", "y", Elem(((1,),)), UNIVERSE.top)], TypeMismatch),
    ],
)
def test_build_rejects_malformed_diagrams(nodes, edges, error) -> None:
    with pytest.raises(error):
        build_diagram(UNIVERSE, THEORY, _nodes(*nodes), edges)


def test_dot_objects_do_not_exist_in_modexp() -> None:
    with pytest.raises(TypeMismatch):
        build_diagram(UNIVERSE, THEORY, [Node("d", AlgebraObject.DOT)], [])


def test_cycles_are_rejected() -> None:
    top = UNIVERSE.top
    with pytest.raises(CycleDetected) as excinfo:
        build_diagram(
            UNIVERSE,
            THEORY,
            _nodes("x", "y", "z"),
            [Edge("x", "y", Pow(2), top), Edge("y", "z", Pow(2), top), Edge("z", "x", Pow(2), top)],
        )
    assert len(excinfo.value.cycle) == 3


def test_tags_over_another_universe_are_rejected() -> None:
    other = ParticipantUniverse.of(["A", "B"])
    with pytest.raises(UniverseError):
        build_diagram(UNIVERSE, THEORY, _nodes("x", "y"), [Edge("x", "y", Pow(2), other.top)])


def test_empty_diagram_is_valid() -> None:
    d = build_diagram(UNIVERSE, THEORY, [], [])
    assert d.nodes == () and d.edges == ()
    assert check_commutes(d).ok


def test_arrows_are_normalized_on_build() -> None:
    d = build_diagram(UNIVERSE, THEORY, _nodes("x", "y"), [Edge("x", "y", Pow(8), UNIVERSE.top)])
    assert d.edge("x", "y").arrow == Pow(2)


def test_diagram_order_compares_tags_edge_by_edge(ring_dh, leaked_ring, bipartite_dh) -> None:
    assert diagram_leq(ring_dh, leaked_ring)
    assert not diagram_leq(leaked_ring, ring_dh)
    assert diagram_leq(ring_dh, ring_dh)
    with pytest.raises(UniverseError):
        diagram_leq(ring_dh, bipartite_dh)


def test_diagram_order_requires_every_edge(ring_dh) -> None:
    smaller = build_diagram(ring_dh.universe, ring_dh.theory, ring_dh.nodes, ring_dh.edges[1:])
    assert diagram_leq(smaller, ring_dh)
    assert not diagram_leq(ring_dh, smaller)


def test_with_tags_replaces_only_named_edges(ring_dh) -> None:
    raised = ring_dh.universe.top
    updated = ring_dh.with_tags({("g", "g^A"): raised})
    assert updated.edge("g", "g^A").tag == raised
    assert updated.edge("g", "g^B").tag == ring_dh.edge("g", "g^B").tag
    assert ring_dh.edge("g", "g^A").tag != raised
    with pytest.raises(UnknownNode):
        ring_dh.with_tags({("g", "nowhere"): raised})
