"""Weierstrass models, points, twists, specialization and reduction."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .model import (
    AffinePoint,
    CurveError,
    CurvePoint,
    Invariants,
    PointAtInfinity,
    PointError,
    SingularModelError,
    WeierstrassModel,
)

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .reduction import ReductionError, ResidueMap, base_change, descend, reduce_mod_p
    from .specialize import SpecializationError, scale_to_triple, specialize
    from .twists import (
        TwistError,
        certify_double_cover,
        is_isomorphic,
        quadratic_twist,
        twist_by_points,
    )

__all__ = [
    "AffinePoint",
    "CurveError",
    "CurvePoint",
    "Invariants",
    "PointAtInfinity",
    "PointError",
    "ReductionError",
    "ResidueMap",
    "SingularModelError",
    "SpecializationError",
    "TwistError",
    "WeierstrassModel",
    "base_change",
    "certify_double_cover",
    "descend",
    "is_isomorphic",
    "quadratic_twist",
    "reduce_mod_p",
    "scale_to_triple",
    "specialize",
    "twist_by_points",
]

_LAZY_EXPORTS = {
    "ReductionError": ".reduction",
    "ResidueMap": ".reduction",
    "base_change": ".reduction",
    "descend": ".reduction",
    "reduce_mod_p": ".reduction",
    "SpecializationError": ".specialize",
    "scale_to_triple": ".specialize",
    "specialize": ".specialize",
    "TwistError": ".twists",
    "certify_double_cover": ".twists",
    "is_isomorphic": ".twists",
    "quadratic_twist": ".twists",
    "twist_by_points": ".twists",
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
