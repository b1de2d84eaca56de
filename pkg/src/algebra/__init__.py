"""Pluggable algebra backends and the theory registry."""

from __future__ import annotations

from importlib import import_module
from typing import Any, Dict, Mapping

from .. import config
from .base import (
    AlgebraArrow,
    AlgebraError,
    AlgebraObject,
    AlgebraTheory,
    CompositionError,
    Elem,
    EvalError,
    Pow,
    Select,
    TheoryError,
    UndeclaredElementError,
    arrows_equal,
    compose,
)

_CACHE: Dict[str, Any] = {}
_PACKAGE_ROOT = __name__.rsplit(".", 1)[0]


def load(module_path: str) -> Any:
    """Import and cache a backend module given relative to the package root, e.g. ``algebra.modexp``."""
    if module_path not in _CACHE:
        _CACHE[module_path] = import_module(f".{module_path}", package=_PACKAGE_ROOT)
    return _CACHE[module_path]


def theory_from_dict(data: Mapping[str, Any]) -> AlgebraTheory:
    """Build a theory from its interchange form, dispatching on ``kind``."""
    if not isinstance(data, Mapping):
        raise TheoryError("Theory must be a JSON object")
    kind = data.get("kind")
    settings = config.ALGEBRA_BACKENDS.get(kind) if isinstance(kind, str) else None
    if settings is None:
        raise TheoryError(f"Unknown theory kind {kind!r}")
    if not settings.get("enabled", True):
        raise TheoryError(f"Theory kind {kind!r} is disabled")
    if "module" not in settings:
        raise TheoryError(f"Backend {kind!r} missing required setting 'module'")
    return load(settings["module"]).theory_from_dict(data)


def theory_to_dict(theory: AlgebraTheory) -> Dict[str, Any]:
    return theory.to_dict()


__all__ = [
    "AlgebraArrow",
    "AlgebraError",
    "AlgebraObject",
    "AlgebraTheory",
    "CompositionError",
    "Elem",
    "EvalError",
    "Pow",
    "Select",
    "TheoryError",
    "UndeclaredElementError",
    "arrows_equal",
    "compose",
    "load",
    "theory_from_dict",
    "theory_to_dict",
]
