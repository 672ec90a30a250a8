"""Rational functions ``num(t) / den(t)`` in lowest terms with a monic denominator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sympy.polys.densetools import dup_transform
from sympy.polys.polyerrors import CoercionFailed

from .domains import Domain, Element, to_element
from .polys import UniPoly


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


@dataclass(frozen=True, slots=True, eq=False)
class RationalFunction:
    num: UniPoly
    den: UniPoly

    def __post_init__(self) -> None:
        if self.den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def from_polys(cls, num: UniPoly, den: UniPoly | None = None) -> RationalFunction:
        """Normalize ``num / den``: cancel the gcd and make the denominator monic."""

        if den is None:
            den = UniPoly.one(num.domain)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        domain = num.domain
        if num.is_zero:
            return cls(UniPoly.zero(domain), UniPoly.one(domain))
        common = num.gcd(den)
        if not common.is_one:
            num = num.exquo(common)
            den = den.exquo(common)
        lead = den.lc
        if lead != domain.one:
            inverse = domain.quo(domain.one, lead)
            num = num.scale(inverse)
            den = den.scale(inverse)
        return cls(num, den)

    @classmethod
    def constant(cls, value: object, domain: Domain) -> RationalFunction:
        return cls(UniPoly.constant(value, domain), UniPoly.one(domain))

    @classmethod
    def zero(cls, domain: Domain) -> RationalFunction:
        return cls(UniPoly.zero(domain), UniPoly.one(domain))

    @classmethod
    def one(cls, domain: Domain) -> RationalFunction:
        return cls(UniPoly.one(domain), UniPoly.one(domain))

    @classmethod
    def gen(cls, domain: Domain) -> RationalFunction:
        return cls(UniPoly.gen(domain), UniPoly.one(domain))

    @property
    def domain(self) -> Domain:
        return self.num.domain

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_one

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_one

    def constant_value(self) -> Element:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.num.lc

    def as_polynomial(self) -> UniPoly:
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: object) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            if other.domain != self.domain:
                raise TypeError(f"domain mismatch: {self.domain} vs {other.domain}")
            return other
        if isinstance(other, UniPoly):
            return RationalFunction(other, UniPoly.one(other.domain))
        try:
            return RationalFunction.constant(other, self.domain)
        except (TypeError, ValueError, CoercionFailed):
            return None

    def __add__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.den == rhs.den:
            return RationalFunction.from_polys(self.num + rhs.num, self.den)
        return RationalFunction.from_polys(
            self.num * rhs.den + rhs.num * self.den, self.den * rhs.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> RationalFunction:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalFunction.from_polys(self.num * rhs.num, self.den * rhs.den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction.from_polys(self.den, self.num)

    def __truediv__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> RationalFunction:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __pow__(self, exponent: int) -> RationalFunction:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.num**exponent, self.den**exponent)

    # ------------------------------------------------------------------
    # valuations, evaluation and substitution
    # ------------------------------------------------------------------

    def valuation(self, place: UniPoly | None) -> int:
        """Order of vanishing at the irreducible ``place``; ``None`` means infinity."""

        if self.is_zero:
            raise ValueError("valuation of zero is infinite")
        if place is None:
            return self.den.degree - self.num.degree
        return self.num.valuation(place) - self.den.valuation(place)

    def __call__(self, value: object) -> Element:
        point = to_element(self.domain, value)
        denominator = self.den(point)
        if not denominator:
            raise PoleError(f"{self} has a pole at {value}")
        return self.domain.quo(self.num(point), denominator)

    def evaluate(self, value: object) -> Element:
        return self(value)

    def compose(self, inner: RationalFunction) -> RationalFunction:
        """Return ``self(inner(t))``."""

        if inner.domain != self.domain:
            raise TypeError("domain mismatch in composition")
        domain = self.domain
        if self.num.is_zero:
            return RationalFunction.zero(domain)
        p, q = inner.num.rep, inner.den.rep
        n, m = max(self.num.degree, 0), max(self.den.degree, 0)
        top = UniPoly._raw(dup_transform(self.num.rep, p, q, domain), domain)
        bottom = UniPoly._raw(dup_transform(self.den.rep, p, q, domain), domain)
        # q^n num(p/q) and q^m den(p/q) come from dup_transform.
        if n >= m:
            bottom = bottom * inner.den ** (n - m)
        else:
            top = top * inner.den ** (m - n)
        return RationalFunction.from_polys(top, bottom)

    def map_coefficients(self, function: Any, domain: Domain | None = None) -> RationalFunction:
        return RationalFunction.from_polys(
            self.num.map_coefficients(function, domain),
            self.den.map_coefficients(function, domain),
        )

    def convert(self, domain: Domain) -> RationalFunction:
        if domain == self.domain:
            return self
        return RationalFunction.from_polys(self.num.convert(domain), self.den.convert(domain))

    def derivative(self) -> RationalFunction:
        return RationalFunction.from_polys(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den**2
        )

    # ------------------------------------------------------------------
    # comparison and display
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.num == coerced.num and self.den == coerced.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_expr(self, symbol: str = "t") -> Any:
        return self.num.to_expr(symbol) / self.den.to_expr(symbol)

    def __str__(self) -> str:
        if self.den.is_one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def as_function(value: object, domain: Domain) -> RationalFunction:
    """Coerce ints, fractions, polynomials and functions into ``domain(t)``."""

    if isinstance(value, RationalFunction):
        return value.convert(domain)
    if isinstance(value, UniPoly):
        return RationalFunction(value.convert(domain), UniPoly.one(domain))
    if isinstance(value, (int, Fraction)):
        return RationalFunction.constant(value, domain)
    return RationalFunction.constant(value, domain)


__all__ = ["PoleError", "RationalFunction", "as_function"]
