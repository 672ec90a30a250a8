"""Exact arithmetic: number fields, polynomials, rational functions and square classes."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .domains import RATIONALS, Domain, Element, format_element, to_element, to_fraction
from .functions import PoleError, RationalFunction, as_function
from .numbers import (
    GaloisError,
    GaloisMap,
    NumberField,
    NumberFieldElement,
    NumberFieldError,
    element_sqrt,
    galois_conjugate,
)
from .polys import UniPoly, product

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .factoring import FactorizationError, certify_irreducible, factor
    from .parsing import ParseError, parse_function, parse_polynomial, parse_scalar
    from .places import Place, PlaceError
    from .squares import (
        SquareClass,
        SquareClassError,
        SquareMode,
        coprime_base,
        is_square,
        sqrt_function,
        squarefree_part,
    )

__all__ = [
    "Domain",
    "Element",
    "FactorizationError",
    "GaloisError",
    "GaloisMap",
    "NumberField",
    "NumberFieldElement",
    "NumberFieldError",
    "ParseError",
    "Place",
    "PlaceError",
    "PoleError",
    "RATIONALS",
    "RationalFunction",
    "SquareClass",
    "SquareClassError",
    "SquareMode",
    "UniPoly",
    "as_function",
    "certify_irreducible",
    "coprime_base",
    "element_sqrt",
    "factor",
    "format_element",
    "galois_conjugate",
    "is_square",
    "parse_function",
    "parse_polynomial",
    "parse_scalar",
    "product",
    "sqrt_function",
    "squarefree_part",
    "to_element",
    "to_fraction",
]

_LAZY_EXPORTS = {
    "FactorizationError": ".factoring",
    "certify_irreducible": ".factoring",
    "factor": ".factoring",
    "ParseError": ".parsing",
    "parse_function": ".parsing",
    "parse_polynomial": ".parsing",
    "parse_scalar": ".parsing",
    "Place": ".places",
    "PlaceError": ".places",
    "SquareClass": ".squares",
    "SquareClassError": ".squares",
    "SquareMode": ".squares",
    "coprime_base": ".squares",
    "is_square": ".squares",
    "sqrt_function": ".squares",
    "squarefree_part": ".squares",
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
