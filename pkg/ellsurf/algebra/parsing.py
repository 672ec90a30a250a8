"""Parse textual polynomials and rational functions from surface documents."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from sympy import Poly, Rational, Symbol, fraction, together
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import PolynomialError

from .functions import RationalFunction
from .numbers import NumberField, NumberFieldElement
from .polys import UniPoly

TRANSFORMATIONS = (*standard_transformations, convert_xor)


class ParseError(ValueError):
    """Raised when an expression cannot be read over the requested field."""


def _namespace(
    field: NumberField, aliases: Mapping[str, str] | None, variable: str
) -> dict[str, Any]:
    names: dict[str, Any] = {variable: Symbol(variable)}
    if not field.is_rational:
        names[field.symbol] = Symbol(field.symbol)
    for alias, text in (aliases or {}).items():
        names[alias] = _parse(text, dict(names))
    return names


def _parse(text: str, names: dict[str, Any]) -> Any:
    try:
        return parse_expr(str(text), local_dict=names, transformations=TRANSFORMATIONS)
    except (SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from exc


def parse_expression(
    text: str,
    field: NumberField,
    aliases: Mapping[str, str] | None = None,
    variable: str = "t",
) -> Any:
    """Sympy expression for ``text`` with aliases expanded in terms of the field generator."""

    return _parse(text, _namespace(field, aliases, variable))


def _poly_from_expr(expr: Any, field: NumberField, variable: str) -> UniPoly:
    t = Symbol(variable)
    gens = [t] if field.is_rational else [t, Symbol(field.symbol)]
    try:
        poly = Poly(expr, *gens)
    except PolynomialError as exc:
        raise ParseError(f"{expr} is not polynomial in {', '.join(map(str, gens))}") from exc
    if not all(isinstance(c, Rational) for c in poly.coeffs()):
        raise ParseError(f"{expr} has coefficients outside {field}")
    degree = poly.degree(t) if not poly.is_zero else 0
    rows: list[list[Fraction]] = [[] for _ in range(max(degree, 0) + 1)]
    for monom, coeff in poly.terms():
        power = monom[0]
        generator_power = monom[1] if len(monom) > 1 else 0
        row = rows[power]
        row.extend([Fraction(0)] * (generator_power + 1 - len(row)))
        row[generator_power] += Fraction(int(coeff.p), int(coeff.q))
    coefficients = [field.element(row).value if row else 0 for row in rows]
    return UniPoly.from_low(coefficients, field.domain)


def parse_function(
    text: str,
    field: NumberField,
    aliases: Mapping[str, str] | None = None,
    variable: str = "t",
) -> RationalFunction:
    """Rational function in ``variable`` over ``field``, e.g. ``"(t-1)^2/(t^2+5)"``."""

    expr = together(parse_expression(text, field, aliases, variable))
    numerator, denominator = fraction(expr)
    num = _poly_from_expr(numerator, field, variable)
    den = _poly_from_expr(denominator, field, variable)
    if den.is_zero:
        raise ParseError(f"{text!r} has a zero denominator")
    return RationalFunction.from_polys(num, den)


def parse_polynomial(
    text: str,
    field: NumberField,
    aliases: Mapping[str, str] | None = None,
    variable: str = "t",
) -> UniPoly:
    function = parse_function(text, field, aliases, variable)
    if not function.is_polynomial:
        raise ParseError(f"{text!r} is not a polynomial")
    return function.num


def parse_scalar(
    text: str | int,
    field: NumberField,
    aliases: Mapping[str, str] | None = None,
) -> NumberFieldElement:
    """Element of ``field`` written in terms of its generator or aliases."""

    function = parse_function(str(text), field, aliases, variable="_t")
    if not function.is_constant:
        raise ParseError(f"{text!r} is not a constant")
    return field.from_domain(function.constant_value())


__all__ = [
    "ParseError",
    "parse_expression",
    "parse_function",
    "parse_polynomial",
    "parse_scalar",
]
