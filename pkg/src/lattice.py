"""Powerset lattice of participants used as epistemic tags."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Tuple


class UniverseError(ValueError):
    """Raised when tags from different universes are combined or names are undeclared."""


@dataclass(frozen=True)
class ParticipantUniverse:
    """Ordered, duplicate-free set of participant names.

    The declaration order is canonical: every printed tag lists its members in
    this order, which keeps reports and serialized documents byte-stable.
    """

    names: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        if not names:
            raise UniverseError("A participant universe needs at least one participant.")
        if len(set(names)) != len(names):
            raise UniverseError(f"Duplicate participant names in {list(names)}")
        for name in names:
            if not isinstance(name, str) or not name:
                raise UniverseError(f"Participant names must be non-empty strings, got {name!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    @classmethod
    def of(cls, names: Iterable[str]) -> "ParticipantUniverse":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    @property
    def top(self) -> "Tag":
        return Tag(self, (1 << len(self.names)) - 1)

    @property
    def bottom(self) -> "Tag":
        return Tag(self, 0)

    def tag(self, members: Iterable[str]) -> "Tag":
        bits = 0
        for name in members:
            try:
                bits |= 1 << self._index[name]
            except KeyError:
                raise UniverseError(
                    f"Participant {name!r} is not declared in {list(self.names)}"
                ) from None
        return Tag(self, bits)

    def all_tags(self) -> Iterator["Tag"]:
        """Every tag of the lattice, ordered by bitset value."""
        for bits in range(1 << len(self.names)):
            yield Tag(self, bits)


@dataclass(frozen=True)
class Tag:
    """A subset of a participant universe stored as a bitset."""

    universe: ParticipantUniverse
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> len(self.universe.names):
            raise UniverseError(f"Tag bits {self.bits:#x} exceed the universe {self.universe.names}")

    def _check(self, other: "Tag") -> None:
        if self.universe != other.universe:
            raise UniverseError(
                f"Tags over different universes: {list(self.universe.names)} vs {list(other.universe.names)}"
            )

    def meet(self, other: "Tag") -> "Tag":
        self._check(other)
        return Tag(self.universe, self.bits & other.bits)

    def join(self, other: "Tag") -> "Tag":
        self._check(other)
        return Tag(self.universe, self.bits | other.bits)

    def without(self, other: "Tag") -> "Tag":
        self._check(other)
        return Tag(self.universe, self.bits & ~other.bits)

    def leq(self, other: "Tag") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    __and__ = meet
    __or__ = join
    __sub__ = without
    __le__ = leq

    def __lt__(self, other: "Tag") -> bool:
        return self.leq(other) and self.bits != other.bits

    @property
    def members(self) -> List[str]:
        return [name for i, name in enumerate(self.universe.names) if self.bits >> i & 1]

    @property
    def is_top(self) -> bool:
        return self.bits == self.universe.top.bits

    @property
    def is_bottom(self) -> bool:
        return self.bits == 0

    @property
    def size(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.members) + "}"

    def __repr__(self) -> str:
        return f"Tag({self})"


def tag_meet(a: Tag, b: Tag) -> Tag:
    return a.meet(b)


def tag_join(a: Tag, b: Tag) -> Tag:
    return a.join(b)


def tag_leq(a: Tag, b: Tag) -> bool:
    return a.leq(b)


def meet_all(universe: ParticipantUniverse, tags: Iterable[Tag]) -> Tag:
    """Meet of ``tags``; the empty meet is top."""
    return reduce(tag_meet, tags, universe.top)


def join_all(universe: ParticipantUniverse, tags: Iterable[Tag]) -> Tag:
    """Join of ``tags``; the empty join is bottom."""
    return reduce(tag_join, tags, universe.bottom)
