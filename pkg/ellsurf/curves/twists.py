"""Quadratic twists, twists by a pair of places, and double covers of the line."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..algebra import NumberFieldElement, RationalFunction, UniPoly, product
from ..algebra.domains import to_element, to_fraction
from ..algebra.factoring import factor
from ..algebra.places import Place
from ..algebra.squares import SquareMode, is_square, sqrt_function
from ..fields import FFElement
from .model import AffinePoint, FieldValue, WeierstrassModel

logger = logging.getLogger(__name__)


class TwistError(ValueError):
    """Raised for degenerate twist parameters or places."""


def is_square_value(value: FieldValue) -> bool:
    """Squareness in the base field of a model; zero counts as a square."""

    if isinstance(value, RationalFunction):
        return is_square(value, SquareMode.RATIONAL)
    if isinstance(value, FFElement):
        return value.field.character(value.value) >= 0
    if isinstance(value, NumberFieldElement):
        return value.field.sqrt(value) is not None
    value = Fraction(value)
    if value < 0:
        return False
    numerator, denominator = value.numerator, value.denominator
    return _is_integer_square(numerator) and _is_integer_square(denominator)


def _is_integer_square(value: int) -> bool:
    root = isqrt(value)
    return root * root == value


# ---------------------------------------------------------------------------
# Quadratic twists
# ---------------------------------------------------------------------------


def quadratic_twist(model: WeierstrassModel, u: FieldValue, *, name: str = "") -> WeierstrassModel:
    """The twist ``u y^2 = x^3 + a2 x^2 + a4 x + a6`` in standard form.

    ``x -> u x`` and ``y -> u^2 y`` clear ``u``: the standard model has
    coefficients ``u a2, u^2 a4, u^3 a6`` and, in the factored form, roots
    ``u e_i``.
    """

    if not u:
        raise TwistError("twist parameter must be nonzero")
    base = model.completed()
    u = base.lift(u)
    options = {"name": name or model.name, "number_field": model.number_field}
    if base.roots is not None:
        e1, e2, e3 = (u * e for e in base.roots)
        return WeierstrassModel.from_roots(e1, e2, e3, **options)
    return WeierstrassModel(0, u * base.a2, 0, u**2 * base.a4, u**3 * base.a6, **options)


def twist_point(twisted: WeierstrassModel, u: FieldValue, x: object, y: object) -> AffinePoint:
    """Point of the standard twist from a solution of ``u y^2 = f(x)``."""

    u = twisted.lift(u)
    return twisted.point(u * twisted.lift(x), u**2 * twisted.lift(y))


def twist_parameter(base: WeierstrassModel, other: WeierstrassModel) -> FieldValue:
    """``u`` up to squares with ``other`` isomorphic to the twist of ``base`` by ``u``.

    Needs ``j`` different from 0 and 1728.
    """

    if base.j_invariant != other.j_invariant:
        raise TwistError("models with different j-invariants are not twists")
    if not base.c4 or not base.c6:
        raise TwistError("twists with j = 0 or 1728 are not quadratic")
    return (other.c6 * base.c4) / (base.c6 * other.c4)


def is_isomorphic(first: WeierstrassModel, second: WeierstrassModel) -> bool:
    """Isomorphism over the base field: equal ``j`` and a square twist parameter."""

    if first.j_invariant != second.j_invariant:
        return False
    if first.c4 and first.c6:
        return is_square_value(twist_parameter(first, second))
    if not first.c6:
        ratio = second.c4 / first.c4
        return is_square_value(ratio) and _is_fourth_power(ratio)
    raise NotImplementedError("isomorphism test for j = 0 needs sextic twists")


def _is_fourth_power(value: FieldValue) -> bool:
    """Exact for rational functions; constants are only tested for squareness."""

    if isinstance(value, RationalFunction):
        root = sqrt_function(value, SquareMode.RATIONAL)
        return root is not None and (is_square_value(root) or is_square_value(-root))
    return is_square_value(value)


def certify_twist(base: WeierstrassModel, twisted: WeierstrassModel, u: FieldValue) -> bool:
    """True when ``twisted`` is the twist of ``base`` by ``u`` and ``u`` is not a square."""

    if is_square_value(base.lift(u)):
        raise TwistError(f"{u} is a square; the twist is trivial")
    return is_square_value(twist_parameter(base, twisted) / base.lift(u))


# ---------------------------------------------------------------------------
# Twists by places
# ---------------------------------------------------------------------------


def odd_places(u: RationalFunction) -> list[Place]:
    """Places where ``u`` has odd valuation, infinity last."""

    places = [
        Place.finite(poly, certify=False)
        for part in (u.num, u.den)
        for poly, multiplicity in factor(part)
        if multiplicity % 2
    ]
    places.sort(key=Place.sort_key)
    if u.valuation(None) % 2:
        places.append(Place.infinity())
    return places


def _descend(poly: UniPoly, domain: object) -> UniPoly:
    try:
        coefficients = [to_fraction(poly.domain, c) for c in poly.coeffs]
    except (TypeError, ValueError) as exc:
        raise TwistError(f"{poly} is not defined over the coefficient field") from exc
    return UniPoly.from_list(coefficients, domain)


def twist_by_points(
    model: WeierstrassModel,
    first: Place,
    second: Place,
    *,
    scale: int | Fraction = 1,
    name: str = "",
) -> tuple[RationalFunction, WeierstrassModel]:
    """Twist ramified exactly at two places of the line.

    ``u = scale * prod(pi)`` over the finite places, so ``u`` has odd
    valuation at each given place and even valuation elsewhere; ``scale``
    picks the representative in the constant square class.
    """

    if first == second:
        raise TwistError("twist places must be distinct")
    if not model.is_function_field:
        raise TwistError("twists by places need a model over a function field")
    domain = model.a4.domain
    finite = [p.poly for p in (first, second) if p.poly is not None]
    pi = product(finite, finite[0].domain) if finite else UniPoly.one(domain)
    if pi.domain != domain:
        pi = _descend(pi, domain)
    u = RationalFunction(pi.scale(to_element(domain, scale)), UniPoly.one(domain))
    at_infinity = u.valuation(None) % 2 == 1
    if at_infinity != (first.is_infinity or second.is_infinity):
        raise TwistError(f"no polynomial twist is ramified exactly at {first} and {second}")
    logger.debug("twist of %s at %s and %s by %s", model.name, first, second, u)
    return u, quadratic_twist(model, u, name=name)


# ---------------------------------------------------------------------------
# Double covers
# ---------------------------------------------------------------------------


def pullback(model: WeierstrassModel, phi: RationalFunction, *, name: str = "") -> WeierstrassModel:
    """Base change along ``t -> phi(t)``."""

    return model.map_coefficients(lambda value: value.compose(phi), name=name or model.name)


def cover_class(phi: RationalFunction) -> RationalFunction:
    """Discriminant in ``t`` of ``num(t) - s den(t)``, a polynomial in ``s``.

    The double cover ``t -> phi(t)`` of the line is the quadratic extension
    obtained by adjoining the square root of this polynomial.
    """

    if max(phi.num.degree, phi.den.degree) != 2:
        raise TwistError("double covers need a map of degree two")
    domain = phi.domain
    s = UniPoly.gen(domain)
    # num(t) - s den(t) = alpha t^2 + beta t + gamma with coefficients in s
    alpha, beta, gamma = (
        UniPoly.constant(phi.num.coefficient(k), domain) - s.scale(phi.den.coefficient(k))
        for k in (2, 1, 0)
    )
    return RationalFunction(beta * beta - (alpha * gamma).scale(4), UniPoly.one(domain))


@dataclass(frozen=True, slots=True)
class CoverCertificate:
    """Result of checking ``cover = base o phi`` and ``twist = base^(d)``."""

    phi: RationalFunction
    twist_class: RationalFunction
    pullback_matches: bool
    twist_matches: bool

    @property
    def holds(self) -> bool:
        return self.pullback_matches and self.twist_matches


def certify_double_cover(
    base: WeierstrassModel,
    cover: WeierstrassModel,
    twist: WeierstrassModel,
    phi: RationalFunction,
) -> CoverCertificate:
    """Certify the decomposition ``rank cover = rank base + rank twist`` is applicable."""

    d = cover_class(phi)
    pulled = is_isomorphic(pullback(base, phi), cover)
    twisted = is_square_value(twist_parameter(base, twist) / d)
    logger.debug("cover %s by %s: pullback %s, twist %s", cover.name, phi, pulled, twisted)
    return CoverCertificate(phi, d, pulled, twisted)


__all__ = [
    "CoverCertificate",
    "TwistError",
    "certify_double_cover",
    "certify_twist",
    "cover_class",
    "is_isomorphic",
    "is_square_value",
    "odd_places",
    "pullback",
    "quadratic_twist",
    "twist_by_points",
    "twist_parameter",
    "twist_point",
]
