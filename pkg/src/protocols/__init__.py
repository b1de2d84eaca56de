"""Protocol generators and a name-based dispatcher."""

from __future__ import annotations

from typing import Callable, Dict, Mapping

from ..diagram import Diagram
from ..utils.logging import get_logger, log_latency
from .cake import CakeParams, PoolsDoNotCommute, gen_cake, preset
from .dh import (
    BadParams,
    DhParams,
    gen_dh2,
    gen_dh_nk,
    gen_dh_pairwise,
    gen_dh_ring,
    make_params,
    parse_keys,
)

logger = get_logger(__name__)


def _dh2(options: Mapping[str, object]) -> Diagram:
    return gen_dh2(make_params(2, **_dh_options(options)))


def _ring(options: Mapping[str, object]) -> Diagram:
    return gen_dh_ring(make_params(_count(options, default=3), **_dh_options(options)))


def _pairwise(options: Mapping[str, object]) -> Diagram:
    return gen_dh_pairwise(make_params(_count(options, default=3), **_dh_options(options)))


def _nk(options: Mapping[str, object]) -> Diagram:
    n = _count(options, default=3)
    k = options.get("k")
    return gen_dh_nk(n, 2 if k is None else int(k), make_params(n, **_dh_options(options)))


def _cake(options: Mapping[str, object]) -> Diagram:
    return gen_cake(preset(str(options.get("preset") or "cake-matrix-demo")))


GENERATORS: Dict[str, Callable[[Mapping[str, object]], Diagram]] = {
    "dh2": _dh2,
    "dh-ring": _ring,
    "dh-pairwise": _pairwise,
    "dh-nk": _nk,
    "cake": _cake,
}


def _count(options: Mapping[str, object], default: int) -> int:
    if options.get("n") is not None:
        return int(options["n"])
    keys = options.get("keys")
    return len(keys) if keys else default


def _dh_options(options: Mapping[str, object]) -> Dict[str, object]:
    return {
        "p": options.get("p"),
        "g": options.get("g"),
        "keys": options.get("keys"),
        "eavesdroppers": options.get("eavesdroppers"),
    }


def generate(name: str, **options: object) -> Diagram:
    """Build the named protocol diagram.

    Options: ``p``, ``g``, ``keys`` (owner -> exponent), ``eavesdroppers``,
    ``n``, ``k`` and, for ``cake``, ``preset``. Unset options fall back to config.
    """
    try:
        builder = GENERATORS[name]
    except KeyError:
        raise BadParams(f"Unknown generator {name!r}; available: {', '.join(GENERATORS)}") from None
    with log_latency(logger, "protocols.generate", generator=name):
        return builder(options)


__all__ = [
    "BadParams",
    "CakeParams",
    "DhParams",
    "GENERATORS",
    "PoolsDoNotCommute",
    "gen_cake",
    "gen_dh2",
    "gen_dh_nk",
    "gen_dh_pairwise",
    "gen_dh_ring",
    "generate",
    "make_params",
    "parse_keys",
    "preset",
]
