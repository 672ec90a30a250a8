"""Sections of elliptic surfaces: named points over ``K(t)``.

Sections are ordinary :class:`~ellsurf.curves.CurvePoint` values whose
coordinates are rational functions; :class:`Section` only adds a name so
reports and Gram matrices can label their rows.  Coordinates are written in
the same textual form as surface documents, e.g. ``"2*(1+sqrt2)*(t-1)^2*t"``
over ``Q(zeta_8)`` with the aliases of :data:`CYCLOTOMIC_ALIASES`.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass

from ..algebra import GaloisMap, NumberField, galois_conjugate
from ..algebra.parsing import parse_function
from ..curves import CurvePoint, PointError, WeierstrassModel

logger = logging.getLogger(__name__)

EIGHTH_CYCLOTOMIC = (1, 0, 0, 0, 1)
"""``x^4 + 1``: the field ``Q(zeta_8)`` containing ``i``, ``sqrt 2`` and ``sqrt -2``."""

CYCLOTOMIC_ALIASES: dict[str, str] = {
    "i": "z^2",
    "sqrt2": "z - z^3",
    "sqrtm2": "z + z^3",
}


class LatticeError(ValueError):
    """Raised for inconsistent Mordell-Weil data."""


def eighth_cyclotomic_field() -> NumberField:
    return NumberField.from_modulus(EIGHTH_CYCLOTOMIC, "z")


def complex_conjugation(field: NumberField) -> GaloisMap:
    """``z -> z^7``: fixes ``sqrt 2`` and sends ``i`` to ``-i``."""

    return GaloisMap.power(field, 7)


@dataclass(frozen=True, slots=True)
class Section:
    point: CurvePoint
    name: str = ""

    @property
    def curve(self) -> WeierstrassModel:
        return self.point.curve

    @property
    def is_zero(self) -> bool:
        return self.point.is_infinity

    def __add__(self, other: Section) -> Section:
        return Section(self.point + other.point, _join(self.name, "+", other.name))

    def __sub__(self, other: Section) -> Section:
        return Section(self.point - other.point, _join(self.name, "-", other.name))

    def __neg__(self) -> Section:
        return Section(-self.point, f"-{self.name}" if self.name else "")

    def __rmul__(self, n: int) -> Section:
        return Section(n * self.point, f"{n}{self.name}" if self.name else "")

    def conjugate(self, sigma: GaloisMap) -> Section:
        curve = self.curve.conjugate(sigma)
        image = self.point.map(lambda value: galois_conjugate(value, sigma), curve)
        return Section(image, f"sigma({self.name})" if self.name else "")

    def __str__(self) -> str:
        return f"{self.name} = {self.point}" if self.name else str(self.point)


def _join(left: str, op: str, right: str) -> str:
    if not left or not right:
        return ""
    return f"{left}{op}{right}"


SectionLike = Section | CurvePoint


def as_point(value: SectionLike) -> CurvePoint:
    return value.point if isinstance(value, Section) else value


def parse_section(
    model: WeierstrassModel,
    x: str,
    y: str,
    *,
    name: str = "",
    field: NumberField | None = None,
    aliases: Mapping[str, str] | None = None,
) -> Section:
    """A section from textual coordinates; raises ``PointError`` off the curve."""

    field = field or model.number_field or NumberField.rationals()
    names = aliases
    if names is None and field.modulus == EIGHTH_CYCLOTOMIC:
        names = CYCLOTOMIC_ALIASES
    xs = parse_function(x, field, names)
    ys = parse_function(y, field, names)
    try:
        point = model.point(xs, ys)
    except PointError as exc:
        raise PointError(f"section {name or '?'} is not on {model.name or 'the model'}") from exc
    logger.debug("section %s parsed on %s", name, model.name)
    return Section(point, name)


def zero_section(model: WeierstrassModel) -> Section:
    return Section(model.infinity, "O")


__all__ = [
    "CYCLOTOMIC_ALIASES",
    "EIGHTH_CYCLOTOMIC",
    "LatticeError",
    "Section",
    "SectionLike",
    "as_point",
    "complex_conjugation",
    "eighth_cyclotomic_field",
    "parse_section",
    "zero_section",
]
