"""Frobenius spectra from point counts: characteristic polynomials and Picard bounds."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .charpoly import CharPoly, SpectraError, traces_to_charpoly

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .artin_tate import DiscriminantClass, GateVerdict, artin_tate_class, discriminant_gate
    from .duality import (
        AmbiguousCompletion,
        DualityBranch,
        DualityError,
        duality_branches,
        duality_complete,
        quotient_traces,
    )
    from .picard import (
        PicardBoundReport,
        cyclotomic_count,
        picard_bound,
        trivial_lattice_charpoly,
    )

__all__ = [
    "AmbiguousCompletion",
    "CharPoly",
    "DiscriminantClass",
    "DualityBranch",
    "DualityError",
    "GateVerdict",
    "PicardBoundReport",
    "SpectraError",
    "artin_tate_class",
    "cyclotomic_count",
    "discriminant_gate",
    "duality_branches",
    "duality_complete",
    "picard_bound",
    "quotient_traces",
    "traces_to_charpoly",
    "trivial_lattice_charpoly",
]

_LAZY_EXPORTS = {
    "DiscriminantClass": ".artin_tate",
    "GateVerdict": ".artin_tate",
    "artin_tate_class": ".artin_tate",
    "discriminant_gate": ".artin_tate",
    "AmbiguousCompletion": ".duality",
    "DualityBranch": ".duality",
    "DualityError": ".duality",
    "duality_branches": ".duality",
    "duality_complete": ".duality",
    "quotient_traces": ".duality",
    "PicardBoundReport": ".picard",
    "cyclotomic_count": ".picard",
    "picard_bound": ".picard",
    "trivial_lattice_charpoly": ".picard",
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
