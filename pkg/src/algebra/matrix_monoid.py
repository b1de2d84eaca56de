"""Finite matrix monoid over ``Z_n`` used as a CAKE platform."""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .base import (
    AlgebraArrow,
    AlgebraObject,
    AlgebraTheory,
    Elem,
    Matrix,
    TheoryError,
    UndeclaredElementError,
)

KIND = "matrix_monoid"


def _exact(values: Any) -> np.ndarray:
    # object dtype keeps Python ints: products stay exact for any modulus
    return np.array(values, dtype=object)


def _as_matrix(values: Any, modulus: int, dim: int) -> Matrix:
    try:
        array = _exact(values)
    except (TypeError, ValueError) as exc:
        raise TheoryError(f"Matrix entries must be integers: {exc}") from exc
    if array.shape != (dim, dim):
        raise TheoryError(f"Expected a {dim}x{dim} matrix, got shape {array.shape}")
    if not all(isinstance(x, numbers.Integral) and not isinstance(x, bool) for x in array.flat):
        raise TheoryError("Matrix entries must be integers")
    return _freeze(array % modulus)


def _freeze(array: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in array)


@dataclass(frozen=True)
class MatrixMonoidTheory(AlgebraTheory):
    """``dim x dim`` matrices over ``Z_modulus`` with named generators and key pools."""

    modulus: int
    dim: int
    elements: Tuple[Tuple[str, Matrix], ...] = ()
    pools: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    _by_name: Dict[str, Matrix] = field(init=False, repr=False, compare=False, hash=False)
    kind = KIND

    def __post_init__(self) -> None:
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise TheoryError(f"Modulus must be an integer >= 2, got {self.modulus!r}")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise TheoryError(f"Dimension must be an integer >= 1, got {self.dim!r}")
        by_name: Dict[str, Matrix] = {}
        normalized: List[Tuple[str, Matrix]] = []
        for name, values in self.elements:
            if name in by_name:
                raise TheoryError(f"Element {name!r} declared twice")
            matrix = _as_matrix(values, self.modulus, self.dim)
            by_name[name] = matrix
            normalized.append((name, matrix))
        # stored by name so equality does not depend on declaration order
        object.__setattr__(self, "elements", tuple(sorted(normalized)))
        object.__setattr__(self, "_by_name", by_name)
        pools = tuple(sorted((pool, tuple(names)) for pool, names in self.pools))
        for pool, names in pools:
            for name in names:
                self.matrix(name)
        object.__setattr__(self, "pools", pools)

    @classmethod
    def build(
        cls,
        modulus: int,
        dim: int,
        elements: Mapping[str, Any],
        pools: Optional[Mapping[str, Sequence[str]]] = None,
    ) -> "MatrixMonoidTheory":
        return cls(
            modulus=modulus,
            dim=dim,
            elements=tuple(elements.items()),
            pools=tuple((name, tuple(members)) for name, members in (pools or {}).items()),
        )

    @property
    def objects(self) -> Tuple[AlgebraObject, ...]:
        return (AlgebraObject.UNIT, AlgebraObject.DOT)

    # ------------------------------------------------------------------
    # Element access
    # ------------------------------------------------------------------
    def matrix(self, name: str) -> Matrix:
        try:
            return self._by_name[name]
        except KeyError:
            raise UndeclaredElementError(f"Monoid element {name!r} is not declared") from None

    def elem(self, name: str) -> Elem:
        return Elem(self.matrix(name), name)

    def identity(self) -> Elem:
        return Elem(_freeze(np.identity(self.dim, dtype=int)))

    def pool(self, name: str) -> Tuple[str, ...]:
        for pool, members in self.pools:
            if pool == name:
                return members
        raise UndeclaredElementError(f"Key pool {name!r} is not declared")

    def name_of(self, matrix: Matrix) -> Optional[str]:
        for name, candidate in self.elements:
            if candidate == matrix:
                return name
        return None

    def product(self, names: Iterable[str]) -> Elem:
        """Composite of ``names`` written right to left (the last name acts first)."""
        result = self.identity()
        for name in reversed(list(names)):
            result = self.compose(result, self.elem(name))
        return result

    # ------------------------------------------------------------------
    # Theory interface
    # ------------------------------------------------------------------
    def normalize(self, f: AlgebraArrow) -> AlgebraArrow:
        self.check_supported(f, Elem)
        return Elem(_as_matrix(f.matrix, self.modulus, self.dim), f.name)

    def compose(self, f: AlgebraArrow, g: AlgebraArrow) -> AlgebraArrow:
        self.check_supported(f, Elem)
        self.check_supported(g, Elem)
        self.check_composable(f, g)
        product = _exact(g.matrix) @ _exact(f.matrix)
        return Elem(_freeze(product % self.modulus))

    def arrows_equal(self, f: AlgebraArrow, g: AlgebraArrow) -> bool:
        self.check_supported(f, Elem)
        self.check_supported(g, Elem)
        self.check_parallel(f, g)
        return self.normalize(f).matrix == self.normalize(g).matrix

    def is_identity(self, f: AlgebraArrow) -> bool:
        return isinstance(f, Elem) and self.arrows_equal(f, self.identity())

    def commutation_witness(
        self, pool_a: Iterable[str], pool_b: Iterable[str]
    ) -> Optional[Tuple[str, str]]:
        """First pair ``(a, b)`` with ``ab != ba``, or ``None`` when the pools commute point-wise."""
        members_b = list(pool_b)
        for a in pool_a:
            left = _exact(self.matrix(a))
            for b in members_b:
                right = _exact(self.matrix(b))
                if not np.array_equal((left @ right) % self.modulus, (right @ left) % self.modulus):
                    return a, b
        return None

    def describe(self, f: AlgebraArrow) -> str:
        if isinstance(f, Elem):
            name = f.name or self.name_of(f.matrix)
            if name:
                return name
            return "[" + ";".join(" ".join(str(x) for x in row) for row in f.matrix) + "]"
        return repr(f)

    def arrow_to_dict(self, f: AlgebraArrow) -> Dict[str, Any]:
        f = self.normalize(f)
        if f.name is not None and self._by_name.get(f.name) == f.matrix:
            return {"op": "elem", "name": f.name}
        return {"op": "elem", "matrix": [list(row) for row in f.matrix]}

    def arrow_from_dict(self, data: Mapping[str, Any]) -> AlgebraArrow:
        if data.get("op") != "elem":
            raise TheoryError(f"Unknown matrix_monoid arrow op {data.get('op')!r}")
        if "name" in data:
            return self.elem(str(data["name"]))
        if "matrix" in data:
            return Elem(_as_matrix(data["matrix"], self.modulus, self.dim))
        raise TheoryError("elem arrows need a 'name' or a 'matrix'")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": KIND,
            "modulus": self.modulus,
            "dim": self.dim,
            "elements": {name: [list(row) for row in matrix] for name, matrix in self.elements},
            "pools": {pool: list(members) for pool, members in self.pools},
        }


def check_pointwise_commuting(
    theory: MatrixMonoidTheory, pool_a: Iterable[str], pool_b: Iterable[str]
) -> bool:
    return theory.commutation_witness(pool_a, pool_b) is None


def theory_from_dict(data: Mapping[str, Any]) -> MatrixMonoidTheory:
    modulus = data.get("modulus")
    dim = data.get("dim")
    elements = data.get("elements", {})
    pools = data.get("pools", {})
    if not isinstance(elements, Mapping) or not isinstance(pools, Mapping):
        raise TheoryError("matrix_monoid 'elements' and 'pools' must be objects")
    return MatrixMonoidTheory.build(modulus, dim, elements, pools)
