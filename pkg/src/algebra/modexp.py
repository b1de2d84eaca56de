"""Modular exponentiation theory ``DH_p``: selections ``{*} -> Z_p`` and powers ``Z_p -> Z_p``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Mapping, Tuple, Union

from .. import config
from .base import (
    AlgebraArrow,
    AlgebraObject,
    AlgebraTheory,
    EvalError,
    Pow,
    Select,
    TheoryError,
)

KIND = "modexp"

UNIT_POINT = "*"
_MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for moduli up to 2^31."""
    if n <= 1:
        return False
    if n <= 3:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class ModExpTheory(AlgebraTheory):
    """``DH_p`` for a prime ``p``.

    Exponents are kept modulo ``p - 1`` with representatives ``1..p-1``: for
    ``e >= 1`` the map ``x -> x^e`` on ``Z_p`` depends only on that class, and
    exponent 0 is never produced, so the identity map and the constant 1 map
    cannot be confused.
    """

    p: int
    kind = KIND

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not 3 <= self.p <= _MAX_PRIME:
            raise TheoryError(f"Modulus must be an integer in 3..2^31, got {self.p!r}")
        if not is_prime(self.p):
            raise TheoryError(f"Modulus {self.p} is not prime")

    @property
    def objects(self) -> Tuple[AlgebraObject, ...]:
        return (AlgebraObject.UNIT, AlgebraObject.CARRIER)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    def select(self, value: int) -> Select:
        return Select(value % self.p)

    def pow(self, exp: int) -> Pow:
        if exp < 1:
            raise TheoryError(f"Exponents must be >= 1, got {exp}")
        return Pow(exp % (self.p - 1) or self.p - 1)

    # ------------------------------------------------------------------
    # Theory interface
    # ------------------------------------------------------------------
    def normalize(self, f: AlgebraArrow) -> AlgebraArrow:
        self.check_supported(f, Select, Pow)
        if isinstance(f, Select):
            return self.select(f.value)
        return self.pow(f.exp)

    def compose(self, f: AlgebraArrow, g: AlgebraArrow) -> AlgebraArrow:
        self.check_supported(f, Select, Pow)
        self.check_supported(g, Select, Pow)
        self.check_composable(f, g)
        assert isinstance(g, Pow)
        if isinstance(f, Select):
            return Select(pow(f.value, g.exp, self.p))
        return self.pow(f.exp * g.exp)

    def arrows_equal(self, f: AlgebraArrow, g: AlgebraArrow) -> bool:
        self.check_supported(f, Select, Pow)
        self.check_supported(g, Select, Pow)
        self.check_parallel(f, g)
        return self.normalize(f) == self.normalize(g)

    def is_identity(self, f: AlgebraArrow) -> bool:
        return isinstance(f, Pow) and self.normalize(f).exp == 1

    def describe(self, f: AlgebraArrow) -> str:
        if isinstance(f, Select):
            return f"[{f.value}]"
        if isinstance(f, Pow):
            return f"(_)^{f.exp}"
        return repr(f)

    def arrow_to_dict(self, f: AlgebraArrow) -> Dict[str, Any]:
        f = self.normalize(f)
        if isinstance(f, Select):
            return {"op": "select", "value": f.value}
        return {"op": "pow", "exp": f.exp}

    def arrow_from_dict(self, data: Mapping[str, Any]) -> AlgebraArrow:
        op = data.get("op")
        if op == "select":
            return self.select(_require_int(data, "value"))
        if op == "pow":
            return self.pow(_require_int(data, "exp"))
        raise TheoryError(f"Unknown modexp arrow op {op!r}")

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": KIND, "p": self.p}

    # ------------------------------------------------------------------
    # Extensional oracle
    # ------------------------------------------------------------------
    def eval_point(self, f: AlgebraArrow, x: Union[int, str]) -> int:
        if isinstance(f, Select):
            if x != UNIT_POINT:
                raise EvalError(f"Selection arrows are evaluated at {UNIT_POINT!r}, got {x!r}")
            return f.value % self.p
        if isinstance(f, Pow):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.p:
                raise EvalError(f"Exponentiation arrows are evaluated on Z_{self.p}, got {x!r}")
            return pow(x, f.exp, self.p)
        raise EvalError(f"{type(f).__name__} arrows cannot be evaluated in DH_{self.p}")

    def extensionally_equal(self, f: AlgebraArrow, g: AlgebraArrow) -> bool:
        """Compare two parallel arrows pointwise over their whole source object."""
        self.check_parallel(f, g)
        if isinstance(f, Select):
            return self.eval_point(f, UNIT_POINT) == self.eval_point(g, UNIT_POINT)
        if self.p > config.EXTENSIONAL_PRIME_BOUND:
            raise EvalError(
                f"p={self.p} exceeds the extensional bound {config.EXTENSIONAL_PRIME_BOUND}"
            )
        return all(self.eval_point(f, x) == self.eval_point(g, x) for x in range(self.p))


def eval_point(theory: ModExpTheory, f: AlgebraArrow, x: Union[int, str]) -> int:
    return theory.eval_point(f, x)


def _require_int(data: Mapping[str, Any], key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise TheoryError(f"Arrow field {key!r} must be an integer, got {value!r}")
    return value


def theory_from_dict(data: Mapping[str, Any]) -> ModExpTheory:
    p = data.get("p")
    if not isinstance(p, int) or isinstance(p, bool):
        raise TheoryError(f"modexp theory needs an integer 'p', got {p!r}")
    return ModExpTheory(p)


__all__ = [
    "KIND",
    "UNIT_POINT",
    "ModExpTheory",
    "eval_point",
    "is_prime",
    "theory_from_dict",
]
