"""Semigroup CAKE (commuting action key exchange) over a matrix monoid."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from ..algebra.base import AlgebraObject, UndeclaredElementError
from ..algebra.matrix_monoid import MatrixMonoidTheory
from ..diagram import Diagram, Edge, Node, build_diagram
from ..lattice import ParticipantUniverse
from .dh import BadParams

PRESETS = ("cake-matrix-demo",)


class PoolsDoNotCommute(BadParams):
    def __init__(self, witness: Tuple[str, str]):
        self.witness = witness
        super().__init__(f"Key pools do not commute point-wise: {witness[0]}*{witness[1]} != {witness[1]}*{witness[0]}")


@dataclass(frozen=True)
class CakeParams:
    theory: MatrixMonoidTheory
    gamma: str = "gamma"
    alpha1: str = "alpha1"
    alpha2: str = "alpha2"
    beta1: str = "beta1"
    beta2: str = "beta2"
    alice: str = "A"
    bob: str = "B"
    eavesdroppers: Tuple[str, ...] = ("E",)

    def __post_init__(self) -> None:
        object.__setattr__(self, "eavesdroppers", tuple(self.eavesdroppers))
        for name in (self.gamma, self.alpha1, self.alpha2, self.beta1, self.beta2):
            try:
                self.theory.matrix(name)
            except UndeclaredElementError as exc:
                raise BadParams(str(exc)) from exc
        if self.alice == self.bob or {self.alice, self.bob} & set(self.eavesdroppers):
            raise BadParams("CAKE participants and eavesdroppers must be distinct")

    @property
    def universe(self) -> ParticipantUniverse:
        return ParticipantUniverse((self.alice, self.bob) + self.eavesdroppers)

    def to_dict(self) -> Dict[str, object]:
        return {
            "gamma": self.gamma,
            "alpha": [self.alpha1, self.alpha2],
            "beta": [self.beta1, self.beta2],
            "participants": [self.alice, self.bob],
            "eavesdroppers": list(self.eavesdroppers),
        }


def cake_matrix_demo() -> MatrixMonoidTheory:
    """4x4 matrices mod 5; pool A acts on the upper 2x2 block, pool B on the lower one."""

    def upper(block):
        (a, b), (c, d) = block
        return [[a, b, 0, 0], [c, d, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]

    def lower(block):
        (a, b), (c, d) = block
        return [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, a, b], [0, 0, c, d]]

    return MatrixMonoidTheory.build(
        modulus=5,
        dim=4,
        elements={
            "gamma": [[1, 2, 3, 4], [0, 1, 2, 3], [4, 0, 1, 2], [3, 4, 0, 1]],
            "alpha1": upper([[1, 2], [0, 1]]),
            "alpha2": upper([[2, 1], [1, 1]]),
            "beta1": lower([[1, 0], [3, 1]]),
            "beta2": lower([[3, 1], [2, 1]]),
        },
        pools={"A": ["alpha1", "alpha2"], "B": ["beta1", "beta2"]},
    )


def preset(name: str) -> CakeParams:
    if name == "cake-matrix-demo":
        return CakeParams(cake_matrix_demo())
    raise BadParams(f"Unknown CAKE preset {name!r}; available: {', '.join(PRESETS)}")


def gen_cake(params: CakeParams) -> Diagram:
    """Eight-node CAKE diagram.

    Alice applies ``alpha2`` then ``alpha1`` around Bob's public ``P_B``; Bob
    mirrors with ``beta2``/``beta1`` around ``P_A``. Both routes reach the
    shared secret ``sigma = alpha1 beta1 gamma beta2 alpha2``.
    """
    theory = params.theory
    witness = theory.commutation_witness(
        (params.alpha1, params.alpha2), (params.beta1, params.beta2)
    )
    if witness is not None:
        raise PoolsDoNotCommute(witness)

    universe = params.universe
    top = universe.top
    alice = universe.tag([params.alice])
    bob = universe.tag([params.bob])
    shared = universe.tag([params.alice, params.bob])

    a1, a2 = theory.elem(params.alpha1), theory.elem(params.alpha2)
    b1, b2 = theory.elem(params.beta1), theory.elem(params.beta2)
    gamma = theory.elem(params.gamma)
    public_a = theory.product([params.alpha1, params.gamma, params.alpha2])
    public_b = theory.product([params.beta1, params.gamma, params.beta2])
    sigma = theory.product([params.alpha1, params.beta1, params.gamma, params.beta2, params.alpha2])

    names = ("start", "A1", "B1", "R0", "R1", "A2", "B2", "end")
    nodes = [Node(name, AlgebraObject.DOT) for name in names]
    edges = [
        Edge("start", "A1", a2, alice, params.alpha2),
        Edge("start", "B1", b2, bob, params.beta2),
        Edge("A1", "R0", b2, bob, params.beta2),
        Edge("B1", "R0", a2, alice, params.alpha2),
        Edge("R0", "R1", gamma, top, params.gamma),
        Edge("R1", "A2", b1, bob, params.beta1),
        Edge("R1", "B2", a1, alice, params.alpha1),
        Edge("A1", "A2", public_b, top, "P_B"),
        Edge("B1", "B2", public_a, top, "P_A"),
        Edge("A2", "end", a1, alice, params.alpha1),
        Edge("B2", "end", b1, bob, params.beta1),
        Edge("start", "end", sigma, shared, "sigma"),
    ]
    metadata = {"generator": "cake", "params": params.to_dict(), "convention": "cake"}
    return build_diagram(universe, theory, nodes, edges, metadata)


__all__ = [
    "CakeParams",
    "PRESETS",
    "PoolsDoNotCommute",
    "cake_matrix_demo",
    "gen_cake",
    "preset",
]
