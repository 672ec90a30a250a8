"""Finite fields, quadratic characters and Frobenius orbits for point counting."""

from __future__ import annotations

from .extension import (
    CharacteristicError,
    ExtField,
    FFElement,
    FieldError,
    quadratic_character,
    smallest_irreducible,
    sqrt,
)
from .orbits import OrbitDecomposition, exact_degree_points, frobenius_orbits_P1
from .tables import TABLE_LIMIT, FieldTables, build_tables, primitive_element

__all__ = [
    "CharacteristicError",
    "ExtField",
    "FFElement",
    "FieldError",
    "FieldTables",
    "OrbitDecomposition",
    "TABLE_LIMIT",
    "build_tables",
    "exact_degree_points",
    "frobenius_orbits_P1",
    "primitive_element",
    "quadratic_character",
    "smallest_irreducible",
    "sqrt",
]
