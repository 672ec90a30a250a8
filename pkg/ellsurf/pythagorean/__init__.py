"""Pythagorean triples, the subfamily ``S`` and its explicit points."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .triples import (
    PythagoreanError,
    Triple,
    TripleClass,
    canonicalize,
    equivalent,
    legendre_lambda,
    param_roundtrip,
    parameter_orbit,
    triple_from_parameter,
)

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .family import ExplicitPoints, SMembership, explicit_points, s_membership, torsion_test
    from .search import SearchReport, search_report

__all__ = [
    "ExplicitPoints",
    "PythagoreanError",
    "SMembership",
    "SearchReport",
    "Triple",
    "TripleClass",
    "canonicalize",
    "equivalent",
    "explicit_points",
    "legendre_lambda",
    "param_roundtrip",
    "parameter_orbit",
    "s_membership",
    "search_report",
    "torsion_test",
    "triple_from_parameter",
]

_LAZY_EXPORTS = {
    "ExplicitPoints": ".family",
    "SMembership": ".family",
    "explicit_points": ".family",
    "s_membership": ".family",
    "torsion_test": ".family",
    "SearchReport": ".search",
    "search_report": ".search",
}


def __getattr__(name: str) -> Any:
    module_name = _LAZY_EXPORTS.get(name)
    if module_name is not None:
        module = import_module(module_name, __name__)
        value = getattr(module, name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__() -> list[str]:  # pragma: no cover - trivial
    return sorted(list(globals().keys()) + list(_LAZY_EXPORTS))
