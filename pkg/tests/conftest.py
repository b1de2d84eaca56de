import random
from typing import Callable, Dict, List, Sequence

import pytest

from src import config
from src.algebra.base import AlgebraObject, Pow, Select
from src.algebra.modexp import ModExpTheory
from src.diagram import Diagram, Edge, Node, build_diagram
from src.lattice import ParticipantUniverse
from src.protocols.dh import gen_dh2, make_params

CARRIER = AlgebraObject.CARRIER
UNIT = AlgebraObject.UNIT


@pytest.fixture(autouse=True)
def configure_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config, "DEFAULT_PRIME", 11)
    monkeypatch.setattr(config, "DEFAULT_ROOT", 2)
    monkeypatch.setattr(config, "DEFAULT_EAVESDROPPERS", ["E"])
    monkeypatch.setattr(config, "CHORD_TAG_POLICY", "audience")
    monkeypatch.setattr(config, "ORDERING_LIST_LIMIT", 20)
    monkeypatch.setattr(config, "EXPOSURE_ALERTS_ENABLED", True)


@pytest.fixture
def bipartite_dh() -> Diagram:
    """Two-party DH over Z_11 with root 2 and keys A=3, B=4."""
    return gen_dh2(make_params(2, p=11, g=2, keys={"A": 3, "B": 4}))


def _ring(pow_a_tag: Sequence[str] = ("A",)) -> Diagram:
    theory = ModExpTheory(11)
    universe = ParticipantUniverse.of(["A", "B", "C", "E"])
    a, b, c = 3, 4, 7

    def sel(exponent: int) -> Select:
        return theory.select(pow(2, exponent, 11))

    tag = universe.tag
    top = universe.top
    ids = ["star", "g", "g^A", "g^B", "g^C", "g^AB", "g^BC", "g^CA", "g^ABC"]
    nodes = [Node(node_id, UNIT if node_id == "star" else CARRIER) for node_id in ids]
    edges = [
        Edge("star", "g", sel(1), top, "[g]"),
        Edge("star", "g^A", sel(a), tag("ABE"), "[g^a]"),
        Edge("star", "g^B", sel(b), tag("BCE"), "[g^b]"),
        Edge("star", "g^C", sel(c), tag("CAE"), "[g^c]"),
        Edge("star", "g^AB", sel(a * b), tag("BCE"), "[g^ab]"),
        Edge("star", "g^BC", sel(b * c), tag("CAE"), "[g^bc]"),
        Edge("star", "g^CA", sel(c * a), tag("ABE"), "[g^ca]"),
        Edge("star", "g^ABC", sel(a * b * c), tag("ABC"), "[g^abc]"),
        Edge("g", "g^A", Pow(a), tag(pow_a_tag), "(_)^a"),
        Edge("g", "g^B", Pow(b), tag("B"), "(_)^b"),
        Edge("g", "g^C", Pow(c), tag("C"), "(_)^c"),
        Edge("g^A", "g^AB", Pow(b), tag("B"), "(_)^b"),
        Edge("g^B", "g^BC", Pow(c), tag("C"), "(_)^c"),
        Edge("g^C", "g^CA", Pow(a), tag(pow_a_tag), "(_)^a"),
        Edge("g^AB", "g^ABC", Pow(c), tag("C"), "(_)^c"),
        Edge("g^BC", "g^ABC", Pow(a), tag(pow_a_tag), "(_)^a"),
        Edge("g^CA", "g^ABC", Pow(b), tag("B"), "(_)^b"),
    ]
    return build_diagram(universe, theory, nodes, edges)


@pytest.fixture
def ring_dh() -> Diagram:
    """Three-party ring DH, p=11, g=2, keys A=3, B=4, C=7, eavesdropper E."""
    return _ring()


@pytest.fixture
def leaked_ring() -> Diagram:
    """The ring with every (_)^a edge also known to E."""
    return _ring(("A", "E"))


@pytest.fixture
def square() -> Diagram:
    """Four-step chain n0 -> ... -> n4 with a top-tagged shortcut; no chords."""
    theory = ModExpTheory(1009)
    universe = ParticipantUniverse.of(["V", "W", "X", "Y", "Z"])
    tag = universe.tag
    nodes = [Node(f"n{i}", CARRIER) for i in range(5)]
    edges = [
        Edge("n0", "n1", Pow(2), tag("VW"), "a"),
        Edge("n1", "n2", Pow(3), tag("WX"), "b"),
        Edge("n2", "n3", Pow(5), tag("XY"), "c"),
        Edge("n3", "n4", Pow(7), tag("YZ"), "d"),
        Edge("n0", "n4", Pow(2 * 3 * 5 * 7), universe.top, "dcba"),
    ]
    return build_diagram(universe, theory, nodes, edges)


@pytest.fixture
def square_with_chord(square: Diagram) -> Diagram:
    chord = Edge("n1", "n3", Pow(15), square.universe.tag("WXY"), "cb")
    return build_diagram(square.universe, square.theory, square.nodes, square.edges + (chord,))


UNITS_MOD_10 = (1, 3, 7, 9)


def random_commuting_diagram(
    rng: random.Random,
    *,
    max_nodes: int = 7,
    max_edges: int = 12,
    participants: Sequence[str] = ("A", "B", "C", "E"),
    density: float = 0.45,
) -> Diagram:
    """Commuting DH_11 diagram built from node potentials.

    Node ``j`` carries a unit ``pi_j`` mod 10; selections pick ``2^pi_j`` and the
    power edge ``i -> j`` raises to ``pi_j / pi_i`` mod 10, so every path agrees.
    """
    theory = ModExpTheory(11)
    universe = ParticipantUniverse.of(participants)
    count = rng.randint(2, max_nodes)
    has_unit = rng.random() < 0.7
    ids = [f"v{i}" for i in range(count)]
    potentials: Dict[str, int] = {node_id: rng.choice(UNITS_MOD_10) for node_id in ids}
    nodes = [Node(node_id, UNIT if has_unit and i == 0 else CARRIER) for i, node_id in enumerate(ids)]

    edges: List[Edge] = []
    for i in range(count):
        for j in range(i + 1, count):
            if len(edges) >= max_edges or rng.random() > density:
                continue
            tag = universe.tag(name for name in participants if rng.random() < 0.5)
            target = potentials[ids[j]]
            if has_unit and i == 0:
                arrow = theory.select(pow(2, target, 11))
            else:
                inverse = pow(potentials[ids[i]], -1, 10)
                arrow = theory.pow(target * inverse % 10 or 10)
            edges.append(Edge(ids[i], ids[j], arrow, tag))
    return build_diagram(universe, theory, nodes, edges)


@pytest.fixture
def random_diagrams() -> Callable[..., List[Diagram]]:
    def make(count: int, seed: int = 7, **options) -> List[Diagram]:
        rng = random.Random(seed)
        return [random_commuting_diagram(rng, **options) for _ in range(count)]

    return make
