"""Dense univariate polynomials over a sympy ground domain."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy import Integer, Symbol
from sympy.polys.densearith import (
    dup_add,
    dup_div,
    dup_exquo,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_pow,
    dup_rem,
    dup_sub,
)
from sympy.polys.densebasic import dup_convert, dup_degree, dup_strip
from sympy.polys.densetools import dup_compose, dup_diff, dup_eval, dup_monic
from sympy.polys.euclidtools import dup_discriminant, dup_gcd, dup_resultant
from sympy.polys.polyerrors import CoercionFailed, ExactQuotientFailed

from .domains import Domain, Element, element_expr, element_key, to_element

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


@dataclass(frozen=True, slots=True, eq=False)
class UniPoly:
    """A polynomial ``c_n t^n + ... + c_0`` stored high to low, leading term nonzero."""

    coeffs: tuple[Element, ...]
    domain: Domain = field(repr=False)

    @classmethod
    def from_list(cls, coeffs: Iterable[object], domain: Domain) -> UniPoly:
        converted = [to_element(domain, c) for c in coeffs]
        return cls(tuple(dup_strip(converted)), domain)

    @classmethod
    def from_low(cls, coeffs: Sequence[object], domain: Domain) -> UniPoly:
        """Build from coefficients listed constant term first."""

        return cls.from_list(list(reversed(list(coeffs))), domain)

    @classmethod
    def _raw(cls, coeffs: list[Element], domain: Domain) -> UniPoly:
        return cls(tuple(dup_strip(coeffs)), domain)

    @classmethod
    def zero(cls, domain: Domain) -> UniPoly:
        return cls((), domain)

    @classmethod
    def one(cls, domain: Domain) -> UniPoly:
        return cls((domain.one,), domain)

    @classmethod
    def gen(cls, domain: Domain) -> UniPoly:
        return cls((domain.one, domain.zero), domain)

    @classmethod
    def constant(cls, value: object, domain: Domain) -> UniPoly:
        return cls.from_list([value], domain)

    @classmethod
    def linear_root(cls, root: object, domain: Domain) -> UniPoly:
        """Monic ``t - root``."""

        return cls.from_list([1, -to_element(domain, root)], domain)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def rep(self) -> list[Element]:
        return list(self.coeffs)

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return ZERO_DEGREE
        return int(dup_degree(list(self.coeffs)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.domain.one

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] == self.domain.one

    @property
    def lc(self) -> Element:
        return self.coeffs[0] if self.coeffs else self.domain.zero

    @property
    def tc(self) -> Element:
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def coefficient(self, power: int) -> Element:
        """Coefficient of ``t**power``."""

        index = len(self.coeffs) - 1 - power
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return self.domain.zero

    def low_coefficients(self) -> list[Element]:
        return list(reversed(self.coeffs))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: object) -> UniPoly | None:
        if isinstance(other, UniPoly):
            if other.domain != self.domain:
                raise TypeError(f"domain mismatch: {self.domain} vs {other.domain}")
            return other
        try:
            return UniPoly.constant(other, self.domain)
        except (TypeError, ValueError, CoercionFailed):
            return None

    def __add__(self, other: object) -> UniPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return UniPoly._raw(dup_add(self.rep, rhs.rep, self.domain), self.domain)

    __radd__ = __add__

    def __sub__(self, other: object) -> UniPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return UniPoly._raw(dup_sub(self.rep, rhs.rep, self.domain), self.domain)

    def __rsub__(self, other: object) -> UniPoly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> UniPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return UniPoly._raw(dup_mul(self.rep, rhs.rep, self.domain), self.domain)

    __rmul__ = __mul__

    def __neg__(self) -> UniPoly:
        return UniPoly._raw(dup_neg(self.rep, self.domain), self.domain)

    def __pow__(self, exponent: int) -> UniPoly:
        if exponent < 0:
            raise ValueError("negative powers of polynomials are rational functions")
        return UniPoly._raw(dup_pow(self.rep, exponent, self.domain), self.domain)

    def scale(self, value: object) -> UniPoly:
        return UniPoly._raw(
            dup_mul_ground(self.rep, to_element(self.domain, value), self.domain), self.domain
        )

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = dup_div(self.rep, other.rep, self.domain)
        return UniPoly._raw(q, self.domain), UniPoly._raw(r, self.domain)

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        return UniPoly._raw(dup_rem(self.rep, other.rep, self.domain), self.domain)

    def exquo(self, other: UniPoly) -> UniPoly:
        """Exact quotient; raises ``ArithmeticError`` when ``other`` does not divide."""

        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        try:
            return UniPoly._raw(dup_exquo(self.rep, other.rep, self.domain), self.domain)
        except ExactQuotientFailed as exc:
            raise ArithmeticError(f"{other} does not divide {self}") from exc

    def divides(self, other: UniPoly) -> bool:
        """True when ``self`` divides ``other``."""

        return (other % self).is_zero

    def monic(self) -> UniPoly:
        if self.is_zero:
            return self
        return UniPoly._raw(dup_monic(self.rep, self.domain), self.domain)

    def gcd(self, other: UniPoly) -> UniPoly:
        if self.is_zero:
            return other.monic()
        if other.is_zero:
            return self.monic()
        return UniPoly._raw(dup_gcd(self.rep, other.rep, self.domain), self.domain).monic()

    def derivative(self) -> UniPoly:
        return UniPoly._raw(dup_diff(self.rep, 1, self.domain), self.domain)

    def __call__(self, value: object) -> Element:
        return dup_eval(self.rep, to_element(self.domain, value), self.domain)

    def compose(self, inner: UniPoly) -> UniPoly:
        return UniPoly._raw(dup_compose(self.rep, inner.rep, self.domain), self.domain)

    def resultant(self, other: UniPoly) -> Element:
        return dup_resultant(self.rep, other.rep, self.domain)

    def discriminant(self) -> Element:
        return dup_discriminant(self.rep, self.domain)

    def valuation(self, place: UniPoly) -> int:
        """Multiplicity of the irreducible ``place`` in ``self``; zero polynomial raises."""

        if self.is_zero:
            raise ValueError("valuation of the zero polynomial is infinite")
        count = 0
        current = self
        while current.degree >= place.degree:
            quotient, remainder = current.divmod(place)
            if not remainder.is_zero:
                break
            current = quotient
            count += 1
        return count

    def strip_place(self, place: UniPoly) -> tuple[int, UniPoly]:
        """Return ``(k, g)`` with ``self = place**k * g`` and ``place`` not dividing ``g``."""

        count = 0
        current = self
        while current.degree >= place.degree:
            quotient, remainder = current.divmod(place)
            if not remainder.is_zero:
                break
            current = quotient
            count += 1
        return count, current

    def reversed_weight(self, weight: int) -> UniPoly:
        """Return ``s**weight * self(1/s)``; requires ``weight >= degree``."""

        if self.is_zero:
            return self
        if weight < self.degree:
            raise ValueError("weight below degree")
        low = self.low_coefficients()
        padded = low + [self.domain.zero] * (weight + 1 - len(low))
        return UniPoly._raw(padded, self.domain)

    def map_coefficients(self, function: Any, domain: Domain | None = None) -> UniPoly:
        target = self.domain if domain is None else domain
        return UniPoly._raw([function(c) for c in self.coeffs], target)

    def convert(self, domain: Domain) -> UniPoly:
        if domain == self.domain:
            return self
        return UniPoly._raw(dup_convert(self.rep, self.domain, domain), domain)

    # ------------------------------------------------------------------
    # comparison and display
    # ------------------------------------------------------------------

    def key(self) -> tuple[Any, ...]:
        return tuple(element_key(self.domain, c) for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.domain == other.domain and list(self.coeffs) == list(other.coeffs)
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return list(self.coeffs) == list(coerced.coeffs)

    def __hash__(self) -> int:
        return hash((str(self.domain), self.key()))

    def to_expr(self, symbol: str = "t") -> Any:
        variable = Symbol(symbol)
        expr = Integer(0)
        degree = self.degree
        for index, coefficient in enumerate(self.coeffs):
            expr += element_expr(self.domain, coefficient) * variable ** (degree - index)
        return expr

    def __str__(self) -> str:
        return str(self.to_expr()).replace("**", "^")

    def __repr__(self) -> str:
        return f"UniPoly({self}, {self.domain})"


def product(polys: Iterable[UniPoly], domain: Domain) -> UniPoly:
    result = UniPoly.one(domain)
    for poly in polys:
        result = result * poly
    return result


__all__ = ["UniPoly", "ZERO_DEGREE", "product"]
