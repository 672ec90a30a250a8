"""Integral globally minimal short models ``Y^2 = X^3 + A(t) X + B(t)``.

A model over ``K(t)`` is brought to short form, its denominators are
cleared and every finite place with ``pi^4 | A`` and ``pi^6 | B`` is divided
out.  The weight ``N`` is the least integer with ``deg A <= 4N`` and
``deg B <= 6N``; the chart at infinity is ``s^{4N} A(1/s)``, ``s^{6N} B(1/s)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra import Domain, RationalFunction, UniPoly
from ..algebra.places import Place
from ..algebra.squares import coprime_base
from ..curves import AffinePoint, CurvePoint, PointAtInfinity, WeierstrassModel

logger = logging.getLogger(__name__)

INFINITE_VALUATION = 10**9
"""Stand-in valuation of the zero polynomial."""


class MinimalModelError(ValueError):
    """Raised for models that have no minimal short form (constant or singular)."""


def _ceil_div(value: int, divisor: int) -> int:
    return -(-value // divisor)


def _valuation(poly: UniPoly, place: UniPoly) -> int:
    if poly.is_zero:
        return INFINITE_VALUATION
    return poly.valuation(place)


@dataclass(frozen=True, slots=True)
class LocalModel:
    """The minimal model on the chart containing one place.

    ``uniformizer`` is the place polynomial, or ``s`` for the place at
    infinity where ``a`` and ``b`` are the reversed polynomials.
    """

    place: Place
    uniformizer: UniPoly
    a: UniPoly
    b: UniPoly
    va: int
    vb: int
    vdelta: int

    @property
    def discriminant(self) -> UniPoly:
        return 4 * self.a**3 + 27 * self.b**2

    def unit(self, poly: UniPoly) -> UniPoly:
        """``poly / pi^v(poly)`` reduced modulo ``pi``."""

        if poly.is_zero:
            raise MinimalModelError("the unit part of zero is undefined")
        _, rest = poly.strip_place(self.uniformizer)
        return rest % self.uniformizer

    def residue(self, poly: UniPoly, shift: int) -> UniPoly:
        """``poly / pi^shift`` modulo ``pi``; requires ``pi^shift | poly``."""

        if poly.is_zero:
            return poly
        quotient = poly
        for _ in range(shift):
            quotient = quotient.exquo(self.uniformizer)
        return quotient % self.uniformizer


@dataclass(frozen=True, slots=True)
class MinimalModel:
    """Polynomials ``A``, ``B`` with ``(A, B) = (scale^4 A0, scale^6 B0)``.

    ``A0``, ``B0`` are the short coefficients of ``source``; points map by
    ``X = scale^2 X0`` and ``Y = scale^3 Y0``.
    """

    a: UniPoly
    b: UniPoly
    weight: int
    scale: RationalFunction
    source: WeierstrassModel

    @property
    def domain(self) -> Domain:
        return self.a.domain

    @property
    def discriminant(self) -> UniPoly:
        """``4 A^3 + 27 B^2``, the discriminant up to the unit ``-16``."""

        return 4 * self.a**3 + 27 * self.b**2

    @property
    def chi(self) -> int:
        return self.weight

    def at_infinity(self) -> tuple[UniPoly, UniPoly]:
        """``(s^{4N} A(1/s), s^{6N} B(1/s))``."""

        return self.a.reversed_weight(4 * self.weight), self.b.reversed_weight(6 * self.weight)

    def local(self, place: Place) -> LocalModel:
        if place.is_infinity:
            a, b = self.at_infinity()
            uniformizer = UniPoly.gen(self.domain)
        else:
            assert place.poly is not None
            a, b = self.a, self.b
            uniformizer = place.poly.convert(self.domain)
        delta = 4 * a**3 + 27 * b**2
        return LocalModel(
            place,
            uniformizer,
            a,
            b,
            _valuation(a, uniformizer),
            _valuation(b, uniformizer),
            _valuation(delta, uniformizer),
        )

    def infinity_valuations(self) -> tuple[int, int, int]:
        n = self.weight
        degrees = []
        for poly, weight in ((self.a, 4 * n), (self.b, 6 * n), (self.discriminant, 12 * n)):
            degrees.append(INFINITE_VALUATION if poly.is_zero else weight - poly.degree)
        return degrees[0], degrees[1], degrees[2]

    def short_model(self) -> WeierstrassModel:
        return WeierstrassModel.short(
            RationalFunction(self.a, UniPoly.one(self.domain)),
            RationalFunction(self.b, UniPoly.one(self.domain)),
            name=self.source.name,
            number_field=self.source.number_field,
        )

    def map_point(self, point: CurvePoint) -> CurvePoint:
        """Image of a point of ``source`` on :meth:`short_model`."""

        target = self.short_model()
        short = self.source.to_short(point)
        if isinstance(short, PointAtInfinity):
            return target.infinity
        assert isinstance(short, AffinePoint)
        return target.point(short.x * self.scale**2, short.y * self.scale**3)


def _clear_denominators(
    a: RationalFunction, b: RationalFunction
) -> tuple[UniPoly, UniPoly, UniPoly]:
    common = a.den
    if not b.den.divides(common):
        common = (common * b.den).exquo(common.gcd(b.den))
    numerator_a = a.num * (common**4).exquo(a.den)
    numerator_b = b.num * (common**6).exquo(b.den)
    return numerator_a, numerator_b, common


def _minimizing_divisor(a: UniPoly, b: UniPoly) -> UniPoly:
    """Largest ``u`` with ``u^4 | a`` and ``u^6 | b``."""

    domain = a.domain if not a.is_zero else b.domain
    divisor = UniPoly.one(domain)
    for piece in coprime_base(poly for poly in (a, b) if not poly.is_zero):
        exponents = []
        if not a.is_zero:
            exponents.append(a.valuation(piece) // 4)
        if not b.is_zero:
            exponents.append(b.valuation(piece) // 6)
        exponent = min(exponents)
        if exponent:
            divisor = divisor * piece**exponent
    return divisor


def minimal_model(model: WeierstrassModel) -> MinimalModel:
    """Integral model minimal at every place of ``P^1``, with the transformation recorded."""

    if not model.is_function_field:
        raise MinimalModelError("minimal models are defined for curves over a function field")
    if not model.discriminant:
        raise MinimalModelError("the generic fiber is singular")
    short_a, short_b = model.short_coefficients()
    a, b, common = _clear_denominators(short_a, short_b)
    divisor = _minimizing_divisor(a, b)
    if not divisor.is_one:
        a = a.exquo(divisor**4) if not a.is_zero else a
        b = b.exquo(divisor**6) if not b.is_zero else b
    degrees = [_ceil_div(a.degree, 4) if not a.is_zero else 0]
    degrees.append(_ceil_div(b.degree, 6) if not b.is_zero else 0)
    weight = max(degrees)
    scale = RationalFunction.from_polys(common, divisor)
    logger.debug(
        "minimal model of %s: deg A = %s, deg B = %s, N = %s",
        model.name or "model",
        a.degree,
        b.degree,
        weight,
    )
    return MinimalModel(a, b, weight, scale, model)


__all__ = [
    "INFINITE_VALUATION",
    "LocalModel",
    "MinimalModel",
    "MinimalModelError",
    "minimal_model",
]
