"""Valid orderings of the value-selection events of an IFO diagram."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .. import config
from ..algebra.base import AlgebraObject
from ..diagram import Diagram, EdgeKey, parallel_paths
from ..ifo import require_ifo
from ..utils.logging import get_logger, log_latency

logger = get_logger(__name__)


class CountExplosion(ValueError):
    pass


@dataclass(frozen=True)
class OrderingResult:
    count: int
    orderings: Tuple[Tuple[EdgeKey, ...], ...]
    events: Tuple[EdgeKey, ...]
    dependencies: Dict[EdgeKey, FrozenSet[EdgeKey]]

    @property
    def truncated(self) -> bool:
        return len(self.orderings) < self.count


def event_dependencies(d: Diagram) -> Dict[EdgeKey, FrozenSet[EdgeKey]]:
    """Selection edges mapped to the selection edges found on their parallel paths."""
    events = [edge.key for edge in d.edges if edge.arrow.source == AlgebraObject.UNIT]
    event_set = set(events)
    dependencies: Dict[EdgeKey, FrozenSet[EdgeKey]] = {}
    for key in events:
        needed = set()
        for path in parallel_paths(d, d.edge(*key)):
            needed.update(k for k in path.keys if k in event_set)
        needed.discard(key)
        dependencies[key] = frozenset(needed)
    return dependencies


def is_linear_extension(
    dependencies: Dict[EdgeKey, FrozenSet[EdgeKey]], order: Sequence[EdgeKey]
) -> bool:
    if sorted(order) != sorted(dependencies):
        return False
    seen = set()
    for key in order:
        if not dependencies[key] <= seen:
            return False
        seen.add(key)
    return True


def enumerate_orderings(d: Diagram, limit: Optional[int] = None) -> OrderingResult:
    """Count linear extensions of the event precedence and list the first ``limit`` lexicographically."""
    require_ifo(d)
    limit = config.ORDERING_LIST_LIMIT if limit is None else limit
    bound = config.MAX_ORDERINGS

    with log_latency(logger, "analysis.orderings", edges=len(d.edges)):
        dependencies = event_dependencies(d)
        events = tuple(sorted(dependencies))
        index = {key: i for i, key in enumerate(events)}
        required = [sum(1 << index[k] for k in dependencies[key]) for key in events]
        full = (1 << len(events)) - 1

        @lru_cache(maxsize=None)
        def count(placed: int) -> int:
            if placed == full:
                return 1
            total = 0
            for i in range(len(events)):
                if not placed >> i & 1 and required[i] & ~placed == 0:
                    total += count(placed | 1 << i)
                    if total > bound:
                        raise CountExplosion(f"More than {bound} orderings")
            return total

        total = count(0)

        listed: List[Tuple[EdgeKey, ...]] = []
        prefix: List[int] = []

        def walk(placed: int) -> None:
            if len(listed) >= limit:
                return
            if placed == full:
                listed.append(tuple(events[i] for i in prefix))
                return
            for i in range(len(events)):
                if not placed >> i & 1 and required[i] & ~placed == 0:
                    prefix.append(i)
                    walk(placed | 1 << i)
                    prefix.pop()
                    if len(listed) >= limit:
                        return

        walk(0)

    return OrderingResult(
        count=total, orderings=tuple(listed), events=events, dependencies=dependencies
    )


__all__ = [
    "CountExplosion",
    "OrderingResult",
    "enumerate_orderings",
    "event_dependencies",
    "is_linear_extension",
]
