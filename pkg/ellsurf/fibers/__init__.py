"""Singular fibers: minimal models, Tate's algorithm, dual graphs and surface invariants."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from ..algebra.places import Place, PlaceError
from .symbols import FiniteAbelianGroup, KodairaSymbol, SymbolError

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .graphs import FiberGraph, FrobeniusAction, count_points, fiber_graph
    from .invariants import (
        ConfigurationError,
        KodairaDimension,
        ReductionReport,
        SurfaceInvariants,
        surface_invariants,
        torsion_injection_bound,
        trivial_lattice_cycles,
        verify_good_reduction,
    )
    from .minimal import MinimalModel, MinimalModelError, minimal_model
    from .residue import ResidueField
    from .tate import KodairaFiber, TateError, bad_places, fiber_table, tate_fiber_analysis

__all__ = [
    "ConfigurationError",
    "FiberGraph",
    "FiniteAbelianGroup",
    "FrobeniusAction",
    "KodairaDimension",
    "KodairaFiber",
    "KodairaSymbol",
    "MinimalModel",
    "MinimalModelError",
    "Place",
    "PlaceError",
    "ReductionReport",
    "ResidueField",
    "SurfaceInvariants",
    "SymbolError",
    "TateError",
    "bad_places",
    "count_points",
    "fiber_graph",
    "fiber_table",
    "minimal_model",
    "surface_invariants",
    "tate_fiber_analysis",
    "torsion_injection_bound",
    "trivial_lattice_cycles",
    "verify_good_reduction",
]

_LAZY_EXPORTS = {
    "FiberGraph": ".graphs",
    "FrobeniusAction": ".graphs",
    "count_points": ".graphs",
    "fiber_graph": ".graphs",
    "ConfigurationError": ".invariants",
    "KodairaDimension": ".invariants",
    "ReductionReport": ".invariants",
    "SurfaceInvariants": ".invariants",
    "surface_invariants": ".invariants",
    "torsion_injection_bound": ".invariants",
    "trivial_lattice_cycles": ".invariants",
    "verify_good_reduction": ".invariants",
    "MinimalModel": ".minimal",
    "MinimalModelError": ".minimal",
    "minimal_model": ".minimal",
    "ResidueField": ".residue",
    "KodairaFiber": ".tate",
    "TateError": ".tate",
    "bad_places": ".tate",
    "fiber_table": ".tate",
    "tate_fiber_analysis": ".tate",
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
