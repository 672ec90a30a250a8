"""Number fields ``Q[z]/(m(z))`` with certified irreducible moduli and their automorphisms.

A :class:`NumberField` wraps a sympy ``AlgebraicField`` so that polynomials
and rational functions can use it as a ground domain, while user-facing
values are exposed as :class:`NumberFieldElement` coordinate vectors.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Any

from sympy import Poly, Symbol
from sympy.ntheory import primerange
from sympy.ntheory.residue_ntheory import sqrt_mod
from sympy.polys.densearith import dup_rem
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_discriminant
from sympy.polys.factortools import dup_factor_list
from sympy.polys.galoistools import gf_from_int_poly, gf_irreducible_p

from .domains import (
    Domain,
    Element,
    is_algebraic_domain,
    is_finite_domain,
    is_rational_domain,
    to_element,
    to_fraction,
    to_int_mod,
)
from .functions import RationalFunction
from .polys import UniPoly

logger = logging.getLogger(__name__)

CERTIFICATE_PRIMES = 500
"""Primes below this bound are tried for a mod-p irreducibility certificate."""


class NumberFieldError(ValueError):
    """Raised for invalid moduli or elements that do not belong to a field."""


class GaloisError(ValueError):
    """Raised when a proposed automorphism does not respect the field modulus."""


# ---------------------------------------------------------------------------
# Irreducibility certificates
# ---------------------------------------------------------------------------


def _integer_coefficients(coeffs: Sequence[Fraction]) -> list[int]:
    if any(c.denominator != 1 for c in coeffs):
        raise NumberFieldError("number field moduli must have integer coefficients")
    return [int(c) for c in coeffs]


def certify_irreducible_over_q(coeffs: Sequence[int | Fraction]) -> str:
    """Return a short certificate that the integer polynomial ``coeffs`` is irreducible.

    A prime not dividing the leading coefficient or the discriminant at which
    the reduction stays irreducible settles the question; otherwise the
    polynomial is factored exactly over ``QQ``.
    """

    values = [Fraction(c) for c in coeffs]
    degree = len(values) - 1
    if degree < 1:
        raise NumberFieldError("constant polynomials are not irreducible")
    if degree == 1:
        return "linear"
    integral = _integer_coefficients(values)
    discriminant = int(dup_discriminant([ZZ(c) for c in integral], ZZ))
    if discriminant == 0:
        raise NumberFieldError("modulus has a repeated root")
    for prime in primerange(3, CERTIFICATE_PRIMES):
        if integral[0] % prime == 0 or discriminant % prime == 0:
            continue
        reduced = gf_from_int_poly(integral, prime)
        if gf_irreducible_p(reduced, prime, ZZ):
            return f"irreducible mod {prime}"
    _, factors = dup_factor_list([QQ(c.numerator, c.denominator) for c in values], QQ)
    if len(factors) == 1 and factors[0][1] == 1:
        return "exact factorization over Q"
    raise NumberFieldError(f"modulus {integral} is reducible over Q")


@lru_cache(maxsize=32)
def _algebraic_domain(modulus: tuple[int, ...], symbol: str) -> Domain:
    variable = Symbol("x")
    poly = Poly(list(modulus), variable, domain=QQ)
    domain = QQ.alg_field_from_poly(poly, alias=symbol)
    produced = [to_fraction(QQ, c) for c in domain.mod.to_list()]
    if produced != [Fraction(c) for c in modulus]:
        raise NumberFieldError(f"sympy presented the field by {produced}, expected {modulus}")
    return domain


# ---------------------------------------------------------------------------
# Fields and elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NumberField:
    """The field ``Q[z]/(modulus)``; degree one stands for ``Q`` itself."""

    modulus: tuple[int, ...]
    symbol: str = "z"
    certificate: str = "linear"
    domain: Domain = field(default=QQ, compare=False, repr=False, hash=False)

    @classmethod
    def rationals(cls) -> NumberField:
        return cls((1, 0), "z", "linear", QQ)

    @classmethod
    def from_modulus(cls, coeffs: Sequence[int], symbol: str = "z") -> NumberField:
        """Build a field from a monic integer modulus listed high to low."""

        modulus = tuple(int(c) for c in coeffs)
        if not modulus or modulus[0] != 1:
            raise NumberFieldError("number field modulus must be monic")
        certificate = certify_irreducible_over_q(modulus)
        if len(modulus) == 2:
            if modulus[1] != 0:
                raise NumberFieldError("use NumberField.rationals() for degree one")
            return cls.rationals()
        logger.debug("number field %s certified: %s", modulus, certificate)
        return cls(modulus, symbol, certificate, _algebraic_domain(modulus, symbol))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def modulus_poly(self, domain: Domain | None = None) -> UniPoly:
        return UniPoly.from_list(list(self.modulus), QQ if domain is None else domain)

    # conversions -------------------------------------------------------

    def element(self, coords: Iterable[int | Fraction]) -> NumberFieldElement:
        """Element with coordinates listed in increasing powers of the generator."""

        values = [Fraction(c) for c in coords]
        if self.is_rational:
            return NumberFieldElement(self, (sum(values[:1], Fraction(0)),))
        return self.from_domain(self._reduce(values))

    def _reduce(self, low_coords: Sequence[Fraction]) -> Element:
        high = [QQ(c.numerator, c.denominator) for c in reversed(list(low_coords))]
        modulus = [QQ(c) for c in self.modulus]
        return self.domain.new(dup_rem(high, modulus, QQ))

    def generator(self) -> NumberFieldElement:
        if self.is_rational:
            raise NumberFieldError("the rationals have no generator")
        return self.element([0, 1])

    def from_domain(self, value: Element) -> NumberFieldElement:
        if self.is_rational:
            return NumberFieldElement(self, (to_fraction(QQ, value),))
        high = [to_fraction(QQ, c) for c in value.to_list()]
        low = list(reversed(high)) + [Fraction(0)] * (self.degree - len(high))
        return NumberFieldElement(self, tuple(low))

    def to_domain(self, value: NumberFieldElement | int | Fraction) -> Element:
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise NumberFieldError("element belongs to another field")
            if self.is_rational:
                return to_element(QQ, value.coords[0])
            return self._reduce(list(value.coords))
        return to_element(self.domain, value)

    # roots and automorphisms -------------------------------------------

    def roots_of_modulus(self) -> list[NumberFieldElement]:
        """Roots of the modulus that lie in the field, in a fixed order."""

        if self.is_rational:
            return [self.element([0])]
        poly = self.modulus_poly(self.domain)
        roots = [self.from_domain(r) for r in roots_in_domain(poly)]
        return sorted(roots, key=lambda e: e.coords)

    def automorphisms(self) -> list[GaloisMap]:
        return [GaloisMap(self, root) for root in self.roots_of_modulus()]

    def sqrt(self, value: NumberFieldElement | int | Fraction) -> NumberFieldElement | None:
        root = element_sqrt(self.domain, self.to_domain(value))
        return None if root is None else self.from_domain(root)

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        modulus = self.modulus_poly().to_expr(self.symbol)
        return f"Q[{self.symbol}]/({modulus})"


@dataclass(frozen=True, slots=True)
class NumberFieldElement:
    """Coordinates of an element with respect to ``1, z, z^2, ...``."""

    field: NumberField
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.field.degree and not self.field.is_rational:
            raise NumberFieldError("coordinate vector length must equal the field degree")

    @property
    def value(self) -> Element:
        return self.field.to_domain(self)

    def _lift(self, other: object) -> Element | None:
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise NumberFieldError("elements of different fields")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return to_element(self.field.domain, other)
        return None

    def __add__(self, other: object) -> NumberFieldElement:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self.field.from_domain(self.value + rhs)

    __radd__ = __add__

    def __sub__(self, other: object) -> NumberFieldElement:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self.field.from_domain(self.value - rhs)

    def __rsub__(self, other: object) -> NumberFieldElement:
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return self.field.from_domain(lhs - self.value)

    def __mul__(self, other: object) -> NumberFieldElement:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self.field.from_domain(self.value * rhs)

    __rmul__ = __mul__

    def __neg__(self) -> NumberFieldElement:
        return self.field.from_domain(-self.value)

    def __truediv__(self, other: object) -> NumberFieldElement:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        if not rhs:
            raise ZeroDivisionError("division by zero in a number field")
        return self.field.from_domain(self.field.domain.quo(self.value, rhs))

    def __rtruediv__(self, other: object) -> NumberFieldElement:
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return self.field.from_domain(lhs) / self

    def __pow__(self, exponent: int) -> NumberFieldElement:
        domain = self.field.domain
        if exponent < 0:
            return (self.field.element([1]) / self) ** (-exponent)
        result = domain.one
        base = self.value
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return self.field.from_domain(result)

    def __bool__(self) -> bool:
        return any(self.coords)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise NumberFieldError(f"{self} is not rational")
        return self.coords[0]

    def __str__(self) -> str:
        if self.field.is_rational:
            return str(self.coords[0])
        return str(UniPoly.from_low(list(self.coords), QQ).to_expr(self.field.symbol))


# ---------------------------------------------------------------------------
# Square roots and roots of polynomials
# ---------------------------------------------------------------------------


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def roots_in_domain(poly: UniPoly) -> list[Element]:
    """Distinct roots of ``poly`` lying in its coefficient domain."""

    domain = poly.domain
    if poly.degree < 1:
        return []
    _, factors = dup_factor_list(list(poly.coeffs), domain)
    roots: list[Element] = []
    for factor, _ in factors:
        if len(factor) == 2:
            roots.append(domain.quo(-factor[1], factor[0]))
    if poly.tc == domain.zero and domain.zero not in roots:
        roots.append(domain.zero)
    return roots


def element_sqrt(domain: Domain, value: Element) -> Element | None:
    """Square root of ``value`` inside ``domain``, or ``None``.

    The result is deterministic: over ``QQ`` the non-negative root, over a
    finite field the smaller residue, over a number field the root with the
    smaller coordinate vector.
    """

    if not value:
        return domain.zero
    if is_rational_domain(domain):
        root = _rational_sqrt(to_fraction(domain, value))
        return None if root is None else to_element(domain, root)
    if is_finite_domain(domain):
        prime = int(domain.mod)
        residue = to_int_mod(domain, value)
        candidate = sqrt_mod(residue, prime)
        if candidate is None:
            return None
        return domain.convert(min(int(candidate), prime - int(candidate)))
    if is_algebraic_domain(domain):
        square = UniPoly((domain.one, domain.zero, -value), domain)
        roots = roots_in_domain(square)
        if not roots:
            return None
        return min(roots, key=lambda r: [to_fraction(QQ, c) for c in r.to_list()])
    raise TypeError(f"no square roots in {domain}")


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class GaloisMap:
    """The automorphism sending the field generator to ``image``."""

    field: NumberField
    image: NumberFieldElement

    def __post_init__(self) -> None:
        if self.image.field != self.field:
            raise GaloisError("image must lie in the same field")
        value = self.field.modulus_poly(self.field.domain)(self.image.value)
        if value:
            raise GaloisError(f"{self.image} is not a root of the field modulus")

    @classmethod
    def identity(cls, field: NumberField) -> GaloisMap:
        if field.is_rational:
            return cls(field, field.element([0]))
        return cls(field, field.generator())

    @classmethod
    def from_images(
        cls,
        field: NumberField,
        images: Sequence[tuple[NumberFieldElement, NumberFieldElement]],
    ) -> GaloisMap:
        """Find the automorphism sending each ``a`` to ``b`` for the given pairs."""

        for candidate in field.automorphisms():
            if all(candidate.apply(a) == b for a, b in images):
                return candidate
        raise GaloisError("no automorphism of the field matches the prescribed images")

    @classmethod
    def power(cls, field: NumberField, exponent: int) -> GaloisMap:
        """``z -> z**exponent``; valid for cyclotomic presentations."""

        return cls(field, field.generator() ** exponent)

    @property
    def is_identity(self) -> bool:
        return self.field.is_rational or self.image == self.field.generator()

    def apply_domain(self, value: Element) -> Element:
        if self.field.is_rational:
            return value
        domain = self.field.domain
        result = domain.zero
        image = self.image.value
        for coefficient in value.to_list():
            result = result * image + domain.convert(coefficient, QQ)
        return result

    def apply(self, value: NumberFieldElement) -> NumberFieldElement:
        return self.field.from_domain(self.apply_domain(value.value))

    def compose(self, other: GaloisMap) -> GaloisMap:
        """``self`` after ``other``."""

        return GaloisMap(self.field, self.apply(other.image))

    def __call__(self, value: Any) -> Any:
        return galois_conjugate(value, self)

    def __str__(self) -> str:
        return f"{self.field.symbol} -> {self.image}"


def galois_conjugate(value: Any, sigma: GaloisMap) -> Any:
    """Apply ``sigma`` coefficient-wise to elements, polynomials, functions and points."""

    if isinstance(value, NumberFieldElement):
        return sigma.apply(value)
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, UniPoly):
        return value.map_coefficients(sigma.apply_domain)
    if isinstance(value, RationalFunction):
        return RationalFunction.from_polys(
            value.num.map_coefficients(sigma.apply_domain),
            value.den.map_coefficients(sigma.apply_domain),
        )
    conjugate = getattr(value, "conjugate", None)
    if callable(conjugate):
        return conjugate(sigma)
    raise TypeError(f"cannot conjugate {type(value).__name__}")


__all__ = [
    "GaloisError",
    "GaloisMap",
    "NumberField",
    "NumberFieldElement",
    "NumberFieldError",
    "certify_irreducible_over_q",
    "element_sqrt",
    "galois_conjugate",
    "roots_in_domain",
]
