"""Point counts of reduced elliptic surfaces: fiber traces, bad fibers and totals."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .settings import CountingSettings, Strategy

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .engine import CountingError, SurfaceCounter, TraceStore, surface_count
    from .oracle import OracleError, naive_oracle_count
    from .singular import SingularCountError, singular_fiber_count
    from .traces import (
        FiberCount,
        FiberCountError,
        FiberCurve,
        TraceVector,
        extend_count,
        good_fiber_count,
    )

__all__ = [
    "CountingError",
    "CountingSettings",
    "FiberCount",
    "FiberCountError",
    "FiberCurve",
    "OracleError",
    "SingularCountError",
    "Strategy",
    "SurfaceCounter",
    "TraceStore",
    "TraceVector",
    "extend_count",
    "good_fiber_count",
    "naive_oracle_count",
    "singular_fiber_count",
    "surface_count",
]

_LAZY_EXPORTS = {
    "CountingError": ".engine",
    "SurfaceCounter": ".engine",
    "TraceStore": ".engine",
    "surface_count": ".engine",
    "OracleError": ".oracle",
    "naive_oracle_count": ".oracle",
    "SingularCountError": ".singular",
    "singular_fiber_count": ".singular",
    "FiberCount": ".traces",
    "FiberCountError": ".traces",
    "FiberCurve": ".traces",
    "TraceVector": ".traces",
    "extend_count": ".traces",
    "good_fiber_count": ".traces",
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
