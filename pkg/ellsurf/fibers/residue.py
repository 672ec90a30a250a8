"""Residue fields ``F[t]/(pi)`` of closed points of ``P^1``.

Only the two questions the fiber analysis asks are answered here: is a
residue a square, and how does Galois split the roots of a depressed cubic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from sympy.polys.domains import QQ

from ..algebra import NumberField, NumberFieldError, UniPoly, element_sqrt
from ..algebra.domains import (
    Domain,
    characteristic,
    is_finite_domain,
    is_rational_domain,
    to_fraction,
)
from ..algebra.numbers import roots_in_domain

logger = logging.getLogger(__name__)

CubicPattern = tuple[int, ...]
"""Sizes of the Galois orbits on the three roots, e.g. ``(1, 2)``."""


@lru_cache(maxsize=128)
def _residue_number_field(modulus: tuple[tuple[int, int], ...]) -> tuple[NumberField, int] | None:
    coefficients = [Fraction(n, d) for n, d in modulus]
    degree = len(coefficients) - 1
    scale = lcm(*(c.denominator for c in coefficients))
    integral = [int(c * scale**index) for index, c in enumerate(coefficients)]
    try:
        return NumberField.from_modulus(integral, symbol="w"), scale
    except NumberFieldError:
        logger.debug("could not certify the residue field of degree %s", degree)
        return None


@dataclass(frozen=True, slots=True)
class ResidueField:
    """The residue field at the monic irreducible ``modulus``."""

    modulus: UniPoly

    @property
    def domain(self) -> Domain:
        return self.modulus.domain

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def characteristic(self) -> int:
        return characteristic(self.domain)

    @property
    def is_finite(self) -> bool:
        return is_finite_domain(self.domain)

    @property
    def size(self) -> int | None:
        if not self.is_finite:
            return None
        return self.characteristic**self.degree

    def reduce(self, poly: UniPoly) -> UniPoly:
        return poly % self.modulus

    def multiply(self, first: UniPoly, second: UniPoly) -> UniPoly:
        return (first * second) % self.modulus

    def power(self, value: UniPoly, exponent: int) -> UniPoly:
        result = UniPoly.one(self.domain)
        base = self.reduce(value)
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # squares
    # ------------------------------------------------------------------

    def is_square(self, value: UniPoly) -> bool | None:
        """Squareness of a residue; ``None`` when the field is out of reach."""

        value = self.reduce(value)
        if value.is_zero:
            return True
        if self.is_finite:
            size = self.size
            assert size is not None
            return self.power(value, (size - 1) // 2).is_one
        if self.degree == 1:
            return element_sqrt(self.domain, value.lc) is not None
        if is_rational_domain(self.domain):
            return self._rational_residue_square(value)
        return None

    def _rational_residue_square(self, value: UniPoly) -> bool | None:
        key = tuple(
            (c.numerator, c.denominator)
            for c in (to_fraction(QQ, x) for x in self.modulus.coeffs)
        )
        built = _residue_number_field(key)
        if built is None:
            return None
        field, scale = built
        coords = [
            to_fraction(QQ, c) / Fraction(scale) ** power
            for power, c in enumerate(value.low_coefficients())
        ]
        return field.sqrt(field.element(coords)) is not None

    # ------------------------------------------------------------------
    # cubics
    # ------------------------------------------------------------------

    def cubic_pattern(self, a: UniPoly, b: UniPoly) -> CubicPattern | None:
        """Orbit sizes of Galois on the roots of ``X^3 + a X + b``, assumed separable."""

        a, b = self.reduce(a), self.reduce(b)
        discriminant = self.reduce(-4 * a**3 - 27 * b**2)
        if discriminant.is_zero:
            raise ValueError("the cubic has a repeated root")
        if self.is_finite:
            if self._splits_completely(a, b):
                return (1, 1, 1)
            return (3,) if self.is_square(discriminant) else (1, 2)
        if self.degree != 1:
            return None
        domain = self.domain
        cubic = UniPoly((domain.one, domain.zero, a.lc, b.lc), domain)
        count = len(roots_in_domain(cubic))
        return {3: (1, 1, 1), 1: (1, 2), 0: (3,)}[count]

    def _splits_completely(self, a: UniPoly, b: UniPoly) -> bool:
        """``X^q = X`` modulo ``X^3 + a X + b`` over the residue field."""

        size = self.size
        assert size is not None
        zero = UniPoly.zero(self.domain)

        def multiply(u: list[UniPoly], v: list[UniPoly]) -> list[UniPoly]:
            product = [zero] * 5
            for i, left in enumerate(u):
                if left.is_zero:
                    continue
                for j, right in enumerate(v):
                    product[i + j] = product[i + j] + left * right
            for high in (4, 3):
                lead = self.reduce(product[high])
                product[high] = zero
                product[high - 2] = product[high - 2] - lead * a
                product[high - 3] = product[high - 3] - lead * b
            return [self.reduce(c) for c in product[:3]]

        result = [UniPoly.one(self.domain), zero, zero]
        base = [zero, UniPoly.one(self.domain), zero]
        exponent = size
        while exponent:
            if exponent & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            exponent >>= 1
        return result[0].is_zero and result[1].is_one and result[2].is_zero


__all__ = ["CubicPattern", "ResidueField"]
