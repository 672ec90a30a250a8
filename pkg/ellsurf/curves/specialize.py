"""Specialization of models over ``K(t)`` and the scaling onto Pythagorean curves."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..algebra import NumberField, NumberFieldElement, PoleError, RationalFunction, UniPoly
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
from ..algebra.factoring import FactorizationError, factor
from ..fields import ExtField, FFElement
from .model import AffinePoint, CurvePoint, PointAtInfinity, WeierstrassModel

logger = logging.getLogger(__name__)


class SpecializationError(ValueError):
    """Raised for poles and singular fibers.

    ``factor`` names the vanishing factor of the discriminant when known.
    """

    def __init__(self, message: str, factor: UniPoly | None = None) -> None:
        super().__init__(message)
        self.factor = factor


def to_scalar(domain: Domain, value: Element, number_field: NumberField | None = None) -> Any:
    """Ground-domain element as a :class:`Fraction`, number-field or finite-field element."""

    if is_rational_domain(domain):
        return to_fraction(domain, value)
    if is_finite_domain(domain):
        return FFElement(ExtField.build(int(domain.mod)), to_int_mod(domain, value))
    if is_algebraic_domain(domain):
        if number_field is None:
            raise SpecializationError("algebraic values need the number field of the model")
        return number_field.from_domain(value)
    raise TypeError(f"unsupported domain {domain}")


def _parameter(domain: Domain, value: object, number_field: NumberField | None) -> Element:
    if isinstance(value, NumberFieldElement):
        return to_element(domain, value.field.to_domain(value))
    return to_element(domain, value)


def _vanishing_factor(delta: RationalFunction, point: Element) -> UniPoly | None:
    try:
        factors = factor(delta.num)
    except FactorizationError:
        return None
    for poly, _ in factors:
        if not poly(point):
            return poly
    return None


def specialize_value(
    value: RationalFunction, t0: object, number_field: NumberField | None = None
) -> Any:
    point = _parameter(value.domain, t0, number_field)
    return to_scalar(value.domain, value(point), number_field)


def specialize(
    model: WeierstrassModel,
    t0: object,
    points: Sequence[CurvePoint] = (),
) -> tuple[WeierstrassModel, list[CurvePoint]]:
    """Substitute ``t = t0`` into the model and the given sections.

    A section with a pole at ``t0`` meets the zero section there and
    specializes to the point at infinity.
    """

    if not model.is_function_field:
        raise SpecializationError("only models over a function field can be specialized")
    domain = model.a4.domain
    field = model.number_field
    point = _parameter(domain, t0, field)
    delta = model.discriminant
    try:
        if not delta(point):
            vanishing = _vanishing_factor(delta, point)
            raise SpecializationError(
                f"discriminant vanishes at t = {t0} (factor {vanishing})", vanishing
            )
        coefficients = [to_scalar(domain, a(point), field) for a in model.coefficients]
        roots = None
        if model.roots is not None:
            roots = tuple(to_scalar(domain, e(point), field) for e in model.roots)
    except PoleError as exc:
        raise SpecializationError(f"t = {t0} is a pole of the model") from exc
    special = WeierstrassModel(
        *coefficients,
        roots=roots,  # type: ignore[arg-type]
        name=f"{model.name}@t={t0}" if model.name else "",
        number_field=field,
    )
    images: list[CurvePoint] = []
    for section in points:
        if isinstance(section, PointAtInfinity):
            images.append(special.infinity)
            continue
        try:
            x = to_scalar(domain, section.x(point), field)
            y = to_scalar(domain, section.y(point), field)
        except PoleError:
            images.append(special.infinity)
            continue
        images.append(special.point(x, y))
    logger.debug("specialized %s at t = %s", model.name, t0)
    return special, images


# ---------------------------------------------------------------------------
# Pythagorean scaling
# ---------------------------------------------------------------------------


def triple_model(a: int, b: int) -> WeierstrassModel:
    """``y^2 = x (x - a^2)(x - b^2)`` over ``Q``."""

    return WeierstrassModel.factored(Fraction(a * a), Fraction(b * b), name=f"E({a},{b})")


def triple_parameter(a: int, b: int, c: int) -> Fraction:
    """``t = b / (c - a)``, the parameter of the triple on ``E_t``."""

    if a == c:
        raise SpecializationError("degenerate triple with a = c")
    return Fraction(b, c - a)


def scale_to_triple(point: CurvePoint, triple: tuple[int, int, int]) -> CurvePoint:
    """``(x, y) -> (x (a - c)^2 / 4, y (c - a)^3 / 8)`` from ``E_t`` at ``t = b/(c - a)``."""

    a, b, c = triple
    triple_parameter(a, b, c)
    target = triple_model(a, b)
    if isinstance(point, PointAtInfinity):
        return target.infinity
    return target.point(point.x * Fraction((a - c) ** 2, 4), point.y * Fraction((c - a) ** 3, 8))


def unscale_from_triple(
    point: CurvePoint, triple: tuple[int, int, int], source: WeierstrassModel
) -> CurvePoint:
    """Inverse of :func:`scale_to_triple` onto the specialized ``source`` model."""

    a, b, c = triple
    triple_parameter(a, b, c)
    if isinstance(point, PointAtInfinity):
        return source.infinity
    return source.point(point.x * Fraction(4, (a - c) ** 2), point.y * Fraction(8, (c - a) ** 3))


def section_on_triple(
    model: WeierstrassModel, section: AffinePoint, triple: tuple[int, int, int]
) -> CurvePoint:
    """Specialize a section of ``E_t`` at the triple's parameter and scale it."""

    a, b, c = triple
    _, (image,) = specialize(model, triple_parameter(a, b, c), [section])
    return scale_to_triple(image, triple)


__all__ = [
    "SpecializationError",
    "scale_to_triple",
    "section_on_triple",
    "specialize",
    "specialize_value",
    "to_scalar",
    "triple_model",
    "triple_parameter",
    "unscale_from_triple",
]
