"""Diffie-Hellman family generators: bipartite, ring, pairwise and generic broadcast."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .. import config
from ..algebra.base import AlgebraObject, TheoryError
from ..algebra.modexp import ModExpTheory
from ..diagram import Diagram, Edge, Node, build_diagram
from ..lattice import ParticipantUniverse, Tag

UNIT_NODE = "star"
ROOT_NODE = "g"


class BadParams(ValueError):
    """Raised for generator parameters that cannot describe a protocol."""


@dataclass(frozen=True)
class DhParams:
    """Public prime and root, private exponents per key owner, and eavesdroppers."""

    p: int
    g: int
    keys: Mapping[str, int]
    eavesdroppers: Tuple[str, ...] = ("E",)
    theory: ModExpTheory = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        try:
            theory = ModExpTheory(self.p)
        except TheoryError as exc:
            raise BadParams(str(exc)) from exc
        object.__setattr__(self, "theory", theory)
        object.__setattr__(self, "keys", dict(self.keys))
        object.__setattr__(self, "eavesdroppers", tuple(self.eavesdroppers))
        if not 1 <= self.g <= self.p - 1:
            raise BadParams(f"Root g={self.g} must lie in 1..{self.p - 1}")
        if not self.keys:
            raise BadParams("At least one key owner is required")
        for owner, exponent in self.keys.items():
            if not isinstance(exponent, int) or not 1 <= exponent <= self.p - 1:
                raise BadParams(f"Key of {owner} must be an exponent in 1..{self.p - 1}, got {exponent!r}")
        overlap = set(self.keys) & set(self.eavesdroppers)
        if overlap:
            raise BadParams(f"Key owners and eavesdroppers overlap: {sorted(overlap)}")
        if len(set(self.eavesdroppers)) != len(self.eavesdroppers):
            raise BadParams(f"Duplicate eavesdroppers in {list(self.eavesdroppers)}")

    @property
    def owners(self) -> Tuple[str, ...]:
        return tuple(self.keys)

    @property
    def universe(self) -> ParticipantUniverse:
        return ParticipantUniverse(self.owners + self.eavesdroppers)

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "g": self.g,
            "keys": dict(self.keys),
            "eavesdroppers": list(self.eavesdroppers),
        }


def default_keys(n: int, p: int, eavesdroppers: Sequence[str] = ()) -> Dict[str, int]:
    """Owners ``A, B, C, ...`` (skipping eavesdropper names) with small distinct exponents."""
    names = [letter for letter in string.ascii_uppercase if letter not in eavesdroppers][:n]
    candidates = [e for e in config.DEFAULT_EXPONENTS if 1 < e < p]
    candidates += [e for e in range(2, p) if e not in candidates]
    if len(names) < n or len(candidates) < n:
        raise BadParams(f"Cannot pick {n} default keys for p={p}")
    return dict(zip(names, candidates))


def parse_keys(text: str) -> Dict[str, int]:
    """``"A=3,B=4"`` -> ``{"A": 3, "B": 4}``."""
    keys: Dict[str, int] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        owner, sep, value = part.partition("=")
        if not sep or not owner.strip():
            raise BadParams(f"Malformed key assignment {part!r}; expected NAME=EXPONENT")
        try:
            keys[owner.strip()] = int(value)
        except ValueError:
            raise BadParams(f"Exponent for {owner.strip()} is not an integer: {value!r}") from None
    return keys


def make_params(
    n: Optional[int] = None,
    *,
    p: Optional[int] = None,
    g: Optional[int] = None,
    keys: Optional[Mapping[str, int]] = None,
    eavesdroppers: Optional[Iterable[str]] = None,
) -> DhParams:
    p = config.DEFAULT_PRIME if p is None else p
    g = config.DEFAULT_ROOT if g is None else g
    eve = tuple(config.DEFAULT_EAVESDROPPERS if eavesdroppers is None else eavesdroppers)
    if keys is None:
        keys = default_keys(3 if n is None else n, p, eve)
    elif n is not None and len(keys) != n:
        raise BadParams(f"Expected {n} key owners, got {len(keys)}")
    return DhParams(p=p, g=g, keys=keys, eavesdroppers=eve)


def _node_id(members: Iterable[str]) -> str:
    suffix = "".join(members)
    return f"{ROOT_NODE}^{suffix}" if suffix else ROOT_NODE


def _select_label(members: Iterable[str]) -> str:
    suffix = "".join(m.lower() for m in members)
    return f"[g^{suffix}]" if suffix else "[g]"


def _pow_label(owner: str) -> str:
    return f"(_)^{owner.lower()}"


def _value(params: DhParams, members: Iterable[str]) -> int:
    return pow(params.g, prod(params.keys[m] for m in members), params.p)


def _metadata(generator: str, params: DhParams, convention: str, **extra: object) -> Dict[str, object]:
    return {"generator": generator, "params": params.to_dict(), "convention": convention, **extra}


def gen_dh_nk(n: int, k: int, params: DhParams) -> Diagram:
    """``<n,k>`` DH with every value below the full ``k``-subsets broadcast."""
    if len(params.owners) != n:
        raise BadParams(f"Expected {n} key owners, got {len(params.owners)}")
    if not 2 <= k <= n:
        raise BadParams(f"Need 2 <= k <= n, got n={n}, k={k}")

    theory = params.theory
    universe = params.universe
    owners = params.owners
    top = universe.top

    nodes = [Node(UNIT_NODE, AlgebraObject.UNIT)]
    edges: List[Edge] = []
    for size in range(k + 1):
        for subset in combinations(owners, size):
            node_id = _node_id(subset)
            nodes.append(Node(node_id, AlgebraObject.CARRIER))
            tag = top if size < k else universe.tag(subset)
            edges.append(
                Edge(UNIT_NODE, node_id, theory.select(_value(params, subset)), tag, _select_label(subset))
            )
            if size == k:
                continue
            for owner in owners:
                if owner in subset:
                    continue
                extended = tuple(m for m in owners if m in subset or m == owner)
                edges.append(
                    Edge(
                        node_id,
                        _node_id(extended),
                        theory.pow(params.keys[owner]),
                        universe.tag([owner]),
                        _pow_label(owner),
                    )
                )

    extra = {"n": n, "k": k}
    if 2 < k < n:
        extra["convention_flagged"] = True
    return build_diagram(universe, theory, nodes, edges, _metadata("dh-nk", params, "broadcast", **extra))


def gen_dh2(params: DhParams) -> Diagram:
    if len(params.owners) != 2:
        raise BadParams(f"Bipartite DH needs exactly 2 key owners, got {len(params.owners)}")
    d = gen_dh_nk(2, 2, params)
    return d.with_metadata(generator="dh2", convention="bipartite")


def gen_dh_pairwise(params: DhParams) -> Diagram:
    n = len(params.owners)
    if n < 2:
        raise BadParams("Pairwise DH needs at least 2 key owners")
    d = gen_dh_nk(n, 2, params)
    return d.with_metadata(generator="dh-pairwise")


def gen_dh_ring(params: DhParams) -> Diagram:
    """``<n,n>`` ring DH: each partial value is computed by one owner and passed to the next.

    The value of a key interval ending at owner ``i`` is tagged ``{i, next(i)}``
    plus the eavesdroppers; the full shared secret only carries the owners.
    """
    owners = params.owners
    n = len(owners)
    if n < 3:
        raise BadParams(f"Ring DH needs at least 3 key owners, got {n}")

    theory = params.theory
    universe = params.universe
    eve = universe.tag(params.eavesdroppers)

    def interval(start: int, length: int) -> Tuple[str, ...]:
        return tuple(owners[(start + step) % n] for step in range(length))

    def ring_id(members: Tuple[str, ...]) -> str:
        if len(members) == n:
            return _node_id(owners)
        return _node_id(members)

    nodes = [Node(UNIT_NODE, AlgebraObject.UNIT), Node(ROOT_NODE, AlgebraObject.CARRIER)]
    edges: List[Edge] = [
        Edge(UNIT_NODE, ROOT_NODE, theory.select(params.g), universe.top, _select_label(()))
    ]
    full = _node_id(owners)
    nodes.append(Node(full, AlgebraObject.CARRIER))
    edges.append(
        Edge(UNIT_NODE, full, theory.select(_value(params, owners)), universe.tag(owners), _select_label(owners))
    )

    for start in range(n):
        first = owners[start]
        edges.append(
            Edge(ROOT_NODE, _node_id((first,)), theory.pow(params.keys[first]), universe.tag([first]), _pow_label(first))
        )
        for length in range(1, n):
            members = interval(start, length)
            last = members[-1]
            follower = owners[(owners.index(last) + 1) % n]
            nodes.append(Node(ring_id(members), AlgebraObject.CARRIER))
            tag: Tag = universe.tag([last, follower]) | eve
            edges.append(
                Edge(UNIT_NODE, ring_id(members), theory.select(_value(params, members)), tag, _select_label(members))
            )
            edges.append(
                Edge(
                    ring_id(members),
                    ring_id(interval(start, length + 1)),
                    theory.pow(params.keys[follower]),
                    universe.tag([follower]),
                    _pow_label(follower),
                )
            )

    return build_diagram(universe, theory, nodes, edges, _metadata("dh-ring", params, "ring", n=n))


__all__ = [
    "BadParams",
    "DhParams",
    "ROOT_NODE",
    "UNIT_NODE",
    "default_keys",
    "gen_dh2",
    "gen_dh_nk",
    "gen_dh_pairwise",
    "gen_dh_ring",
    "make_params",
    "parse_keys",
]
