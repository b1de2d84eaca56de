"""Objects, arrows and the theory interface shared by every algebra backend."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

Matrix = Tuple[Tuple[int, ...], ...]


class AlgebraError(ValueError):
    """Base class for algebra failures."""


class CompositionError(AlgebraError):
    """Raised when two arrows are composed (or compared) across mismatched objects."""


class EvalError(AlgebraError):
    """Raised when an arrow is evaluated at a point outside its source object."""


class UndeclaredElementError(AlgebraError, NameError):
    """Raised when a monoid element name has not been declared by the theory."""


class TheoryError(AlgebraError):
    """Raised for invalid theory parameters or unknown theory kinds."""


class AlgebraObject(str, Enum):
    UNIT = "unit"
    CARRIER = "carrier"
    DOT = "dot"


@dataclass(frozen=True)
class Select:
    """Selection arrow ``[value]: {*} -> Z_p``."""

    value: int

    source = AlgebraObject.UNIT
    target = AlgebraObject.CARRIER


@dataclass(frozen=True)
class Pow:
    """Exponentiation arrow ``(_)^exp: Z_p -> Z_p`` with a normalized exponent."""

    exp: int

    source = AlgebraObject.CARRIER
    target = AlgebraObject.CARRIER


@dataclass(frozen=True)
class Elem:
    """Monoid element acting on the single object; equality is by matrix."""

    matrix: Matrix
    name: Optional[str] = field(default=None, compare=False)

    source = AlgebraObject.DOT
    target = AlgebraObject.DOT


AlgebraArrow = Select | Pow | Elem


class AlgebraTheory(ABC):
    """A category with decidable arrow equality.

    ``compose(f, g)`` is ``g`` after ``f``: following a path applies its arrows
    in order and the composite is written right to left.
    """

    kind: str = ""

    @property
    @abstractmethod
    def objects(self) -> Tuple[AlgebraObject, ...]:
        """Objects available in this theory."""

    @abstractmethod
    def compose(self, f: AlgebraArrow, g: AlgebraArrow) -> AlgebraArrow:
        """Return ``g ∘ f`` in normal form."""

    @abstractmethod
    def arrows_equal(self, f: AlgebraArrow, g: AlgebraArrow) -> bool:
        """Decide equality of two parallel arrows."""

    @abstractmethod
    def is_identity(self, f: AlgebraArrow) -> bool:
        """Return ``True`` when ``f`` acts as an identity."""

    @abstractmethod
    def normalize(self, f: AlgebraArrow) -> AlgebraArrow:
        """Validate ``f`` against this theory and return its normal form."""

    @abstractmethod
    def describe(self, f: AlgebraArrow) -> str:
        """Short human-readable rendering of ``f``."""

    @abstractmethod
    def arrow_to_dict(self, f: AlgebraArrow) -> Dict[str, Any]:
        """Interchange representation of ``f``."""

    @abstractmethod
    def arrow_from_dict(self, data: Mapping[str, Any]) -> AlgebraArrow:
        """Parse an arrow from its interchange representation."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Interchange representation of the theory."""

    def check_composable(self, f: AlgebraArrow, g: AlgebraArrow) -> None:
        if f.target != g.source:
            raise CompositionError(
                f"Cannot compose {self.describe(g)} after {self.describe(f)}: "
                f"{f.target.value} != {g.source.value}"
            )

    def check_parallel(self, f: AlgebraArrow, g: AlgebraArrow) -> None:
        if f.source != g.source or f.target != g.target:
            raise CompositionError(
                f"Arrows {self.describe(f)} and {self.describe(g)} are not parallel"
            )

    def check_supported(self, f: AlgebraArrow, *supported: type) -> None:
        if not isinstance(f, supported):
            raise CompositionError(f"{type(f).__name__} arrows do not belong to the {self.kind} theory")


def compose(theory: AlgebraTheory, f: AlgebraArrow, g: AlgebraArrow) -> AlgebraArrow:
    return theory.compose(f, g)


def arrows_equal(theory: AlgebraTheory, f: AlgebraArrow, g: AlgebraArrow) -> bool:
    return theory.arrows_equal(f, g)
