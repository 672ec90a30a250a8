"""Helpers bridging Python numbers and sympy ground domains.

Every polynomial in :mod:`ellsurf` stores its coefficients as elements of a
sympy ground domain: ``QQ``, a finite field ``GF(p)`` or an algebraic number
field built by :class:`~ellsurf.algebra.numbers.NumberField`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from sympy import Integer, Rational, Symbol
from sympy.polys.domains import QQ

Domain = Any
Element = Any

Scalar = int | Fraction


def is_rational_domain(domain: Domain) -> bool:
    return bool(domain.is_QQ)


def is_finite_domain(domain: Domain) -> bool:
    return bool(domain.is_FiniteField)


def is_algebraic_domain(domain: Domain) -> bool:
    return bool(domain.is_Algebraic)


def characteristic(domain: Domain) -> int:
    if is_finite_domain(domain):
        return int(domain.mod)
    return 0


def to_element(domain: Domain, value: object) -> Element:
    """Convert ``value`` (int, Fraction or a domain element) into ``domain``."""

    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, int):
        return domain.convert(value)
    if isinstance(value, Fraction):
        numerator = domain.convert(value.numerator)
        if value.denominator == 1:
            return numerator
        return domain.quo(numerator, domain.convert(value.denominator))
    if isinstance(value, (Integer, Rational)):
        return to_element(domain, Fraction(int(value.p), int(value.q)))
    if domain.of_type(value):
        return value
    return domain.convert(value)


def to_fraction(domain: Domain, value: Element) -> Fraction:
    """Return ``value`` as a :class:`Fraction`; only valid over ``QQ``."""

    if is_rational_domain(domain):
        return Fraction(int(value.numerator), int(value.denominator))
    if is_algebraic_domain(domain):
        coords = value.to_list()
        if len(coords) > 1:
            raise ValueError("element is not rational")
        if not coords:
            return Fraction(0)
        return Fraction(int(coords[0].numerator), int(coords[0].denominator))
    raise TypeError(f"no rational view of elements of {domain}")


def to_int_mod(domain: Domain, value: Element) -> int:
    """Return the least non-negative residue of a finite field element."""

    return int(value) % int(domain.mod)


def element_key(domain: Domain, value: Element) -> tuple[Any, ...]:
    """Hashable, domain-independent key for ``value``."""

    if is_finite_domain(domain):
        return (to_int_mod(domain, value),)
    if is_rational_domain(domain):
        return (int(value.numerator), int(value.denominator))
    if is_algebraic_domain(domain):
        return tuple((int(c.numerator), int(c.denominator)) for c in value.to_list())
    return (repr(value),)


def element_expr(domain: Domain, value: Element) -> Any:
    """Return a sympy expression for ``value``; algebraic numbers use the field alias."""

    if is_finite_domain(domain):
        return Integer(to_int_mod(domain, value))
    if is_rational_domain(domain):
        return Rational(int(value.numerator), int(value.denominator))
    if is_algebraic_domain(domain):
        alias = domain.ext.alias or Symbol("z")
        coords = value.to_list()
        degree = len(coords) - 1
        expr = Integer(0)
        for index, coefficient in enumerate(coords):
            expr += Rational(int(coefficient.numerator), int(coefficient.denominator)) * alias ** (
                degree - index
            )
        return expr
    return domain.to_sympy(value)


def format_element(domain: Domain, value: Element) -> str:
    return str(element_expr(domain, value))


RATIONALS: Domain = QQ

__all__ = [
    "Domain",
    "Element",
    "RATIONALS",
    "Scalar",
    "characteristic",
    "element_expr",
    "element_key",
    "format_element",
    "is_algebraic_domain",
    "is_finite_domain",
    "is_rational_domain",
    "to_element",
    "to_fraction",
    "to_int_mod",
]
