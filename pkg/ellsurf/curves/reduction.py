"""Changes of coefficient field: base change, descent and reduction modulo a prime."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime
from sympy.polys.domains import FF, QQ

from ..algebra import NumberField, RationalFunction
from ..algebra.domains import (
    Domain,
    Element,
    is_algebraic_domain,
    is_finite_domain,
    is_rational_domain,
    to_element,
    to_fraction,
    to_int_mod,
)
from .model import CurvePoint, PointAtInfinity, WeierstrassModel

logger = logging.getLogger(__name__)

EXCLUDED_CHARACTERISTICS = (2, 3)


class ReductionError(ValueError):
    """Raised when a model or point has no good reduction at the requested prime."""


# ---------------------------------------------------------------------------
# Base change and descent
# ---------------------------------------------------------------------------


def base_change(model: WeierstrassModel, field: NumberField) -> WeierstrassModel:
    """The same model with coefficients in ``field(t)``."""

    if field.is_rational:
        return model
    return model.map_coefficients(lambda value: value.convert(field.domain), number_field=field)


def _rational_coefficient(domain: Domain, value: Element) -> Element:
    try:
        return to_element(QQ, to_fraction(domain, value))
    except ValueError as exc:
        raise ReductionError("coefficients are not rational; the model does not descend") from exc


def descend(model: WeierstrassModel) -> WeierstrassModel:
    """The model over ``Q(t)`` when all its coefficients are rational."""

    if not model.is_function_field:
        raise ReductionError("descent applies to models over a function field")
    domain = model.a4.domain
    if is_rational_domain(domain):
        return model
    rational = model.map_coefficients(
        lambda value: value.map_coefficients(lambda c: _rational_coefficient(domain, c), QQ),
        number_field=NumberField.rationals(),
    )
    logger.debug("descended %s to Q(t)", model.name)
    return rational


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ResidueMap:
    """Reduction of ``Q`` or a number field onto ``F_p``.

    For a number field ``Q[z]/(f)`` the map sends ``z`` to ``root``, a root
    of ``f`` modulo ``p``.  Without a root only rational values reduce.
    """

    prime: int
    root: int | None = None
    field: NumberField | None = None

    def __post_init__(self) -> None:
        if not isprime(self.prime):
            raise ReductionError(f"{self.prime} is not prime")
        if self.root is not None and self.field is not None and not self.field.is_rational:
            value = 0
            for coefficient in self.field.modulus:
                value = (value * self.root + coefficient) % self.prime
            if value:
                raise ReductionError(
                    f"{self.root} is not a root of the field modulus modulo {self.prime}"
                )

    @property
    def domain(self) -> Domain:
        return FF(self.prime)

    def _fraction(self, value: Fraction) -> int:
        if value.denominator % self.prime == 0:
            raise ReductionError(f"{self.prime} divides the denominator of {value}")
        return value.numerator * pow(value.denominator, -1, self.prime) % self.prime

    def residue(self, domain: Domain, value: Element) -> int:
        if is_finite_domain(domain):
            return to_int_mod(domain, value)
        if is_rational_domain(domain):
            return self._fraction(to_fraction(domain, value))
        if is_algebraic_domain(domain):
            high = [to_fraction(QQ, c) for c in value.to_list()]
            if len(high) > 1 and self.root is None:
                raise ReductionError("a residue embedding of the number field is required")
            total = 0
            for coefficient in high:
                total = (total * (self.root or 0) + self._fraction(coefficient)) % self.prime
            return total
        raise TypeError(f"unsupported domain {domain}")

    def reduce_function(self, value: RationalFunction) -> RationalFunction:
        source = value.domain
        target = self.domain

        def convert(c: Element) -> Element:
            return target.convert(self.residue(source, c))

        numerator = value.num.map_coefficients(convert, target)
        denominator = value.den.map_coefficients(convert, target)
        if denominator.is_zero:
            raise ReductionError(f"denominator of {value} vanishes modulo {self.prime}")
        return RationalFunction.from_polys(numerator, denominator)


def reduce_mod_p(model: WeierstrassModel, residue: ResidueMap) -> WeierstrassModel:
    """Coefficient-wise reduction of a model over ``K(t)`` to ``F_p(t)``."""

    if residue.prime in EXCLUDED_CHARACTERISTICS:
        raise ReductionError(f"characteristic {residue.prime} is excluded")
    if not model.is_function_field:
        raise ReductionError("reduction applies to models over a function field")
    reduced = model.map_coefficients(
        residue.reduce_function,
        name=f"{model.name} mod {residue.prime}" if model.name else "",
        singular=True,
    )
    if not reduced.discriminant:
        raise ReductionError(f"the generic fiber has bad reduction at {residue.prime}")
    return WeierstrassModel(*reduced.coefficients, roots=reduced.roots, name=reduced.name)


def reduce_point(point: CurvePoint, residue: ResidueMap, target: WeierstrassModel) -> CurvePoint:
    """Reduction of a section onto a reduced model."""

    if isinstance(point, PointAtInfinity):
        return target.infinity
    return target.point(residue.reduce_function(point.x), residue.reduce_function(point.y))


__all__ = [
    "EXCLUDED_CHARACTERISTICS",
    "ReductionError",
    "ResidueMap",
    "base_change",
    "descend",
    "reduce_mod_p",
    "reduce_point",
]
