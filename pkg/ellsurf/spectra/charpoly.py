"""Characteristic polynomials of Frobenius recovered from traces.

Coefficients are exact integers listed from the leading ``1`` down to the
constant term.  ``traces_to_charpoly`` runs Newton's identities on the
power sums ``t_r = sum lambda^r``; any non-integral coefficient means the
traces do not come from an integral Frobenius.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ, Poly, Rational, Symbol

logger = logging.getLogger(__name__)

X = Symbol("x")


class SpectraError(ValueError):
    """Raised for trace data or polynomials that no Frobenius can produce."""


@dataclass(frozen=True, slots=True)
class CharPoly:
    """``det(x I - Phi)`` on a subspace, for Frobenius over ``F_q``."""

    coefficients: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        if not self.coefficients or self.coefficients[0] != 1:
            raise SpectraError("characteristic polynomials are monic")

    @classmethod
    def one(cls, q: int) -> CharPoly:
        return cls((1,), q)

    @classmethod
    def linear(cls, root: int, q: int) -> CharPoly:
        return cls((1, -root), q)

    @classmethod
    def cycle(cls, length: int, q: int, sign: int = 1) -> CharPoly:
        """``x^length - sign q^length``: a class permuted in a cycle, scaled by ``sign q``."""

        return cls((1,) + (0,) * (length - 1) + (-sign * q**length,), q)

    @classmethod
    def from_poly(cls, poly: Poly, q: int) -> CharPoly:
        coefficients = []
        for value in poly.all_coeffs():
            value = Rational(value)
            if value.q != 1:
                raise SpectraError("trace data inconsistent")
            coefficients.append(int(value.p))
        return cls(tuple(coefficients), q)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def constant(self) -> int:
        return self.coefficients[-1]

    def to_poly(self) -> Poly:
        return Poly(list(self.coefficients), X, domain=QQ)

    def normalized(self) -> Poly:
        """``P(q x) / q^deg``, whose roots are the eigenvalues divided by ``q``."""

        values = [Rational(c, self.q**k) for k, c in enumerate(self.coefficients)]
        return Poly(values, X, domain=QQ)

    def __mul__(self, other: CharPoly) -> CharPoly:
        if other.q != self.q:
            raise SpectraError("polynomials for different fields")
        product = (self.to_poly() * other.to_poly()).all_coeffs()
        return CharPoly(tuple(int(c) for c in product), self.q)

    def __pow__(self, exponent: int) -> CharPoly:
        result = CharPoly.one(self.q)
        for _ in range(exponent):
            result = result * self
        return result

    def power_sums(self, count: int) -> list[int]:
        """``[sum lambda^1, ..., sum lambda^count]`` over the roots."""

        return power_sums(self.coefficients, count)

    def functional_sign(self) -> int | None:
        """``e`` with ``x^d P(q^2/x) = e q^d P(x)``, or ``None``."""

        d, c = self.degree, self.coefficients
        for sign in (1, -1):
            if all(c[d - k] == sign * self.q ** (d - 2 * k) * c[k] for k in range(d // 2 + 1)):
                return sign
        return None

    def satisfies_weil(self) -> bool:
        """Every root has absolute value ``q`` in every complex embedding."""

        return unit_circle_roots(self.normalized()) == self.degree

    def __str__(self) -> str:
        return str(self.to_poly().as_expr()).replace("**", "^")


def power_sums(coefficients: Sequence[int], count: int) -> list[int]:
    """Newton's identities from ``x^d + c_1 x^{d-1} + ...`` to power sums."""

    d = len(coefficients) - 1
    sums: list[int] = []
    for k in range(1, count + 1):
        total = -k * coefficients[k] if k <= d else 0
        for i in range(1, k):
            if i <= d:
                total -= coefficients[i] * sums[k - i - 1]
        sums.append(total)
    return sums


def traces_to_charpoly(traces: Sequence[int | Fraction], dim: int, q: int) -> CharPoly:
    """The degree-``dim`` polynomial whose roots have power sums ``traces``.

    Equivalent to expanding ``x^dim exp(-sum t_r x^{-r} / r)`` and keeping
    the polynomial part.
    """

    if len(traces) != dim:
        raise SpectraError(f"need exactly {dim} traces, got {len(traces)}")
    return CharPoly(tuple(newton_coefficients(traces, dim)), q)


def newton_coefficients(traces: Sequence[int | Fraction], count: int) -> list[int]:
    """``[1, c_1, ..., c_count]`` from the first ``count`` power sums."""

    elementary = [Fraction(1)]
    for k in range(1, count + 1):
        total = Fraction(0)
        for i in range(1, k + 1):
            total += (-1) ** (i - 1) * elementary[k - i] * Fraction(traces[i - 1])
        elementary.append(total / k)
    coefficients = []
    for k, value in enumerate(elementary):
        signed = (-1) ** k * value
        if signed.denominator != 1:
            raise SpectraError("trace data inconsistent")
        coefficients.append(int(signed))
    return coefficients


def product(polys: Iterable[CharPoly], q: int) -> CharPoly:
    result = CharPoly.one(q)
    for poly in polys:
        result = result * poly
    return result


# ---------------------------------------------------------------------------
# Roots on the unit circle
# ---------------------------------------------------------------------------


def _strip_unit_roots(poly: Poly) -> tuple[Poly, int]:
    stripped = 0
    for root in (1, -1):
        linear = Poly(X - root, X, domain=QQ)
        while poly.degree() > 0:
            quotient, remainder = poly.div(linear)
            if not remainder.is_zero:
                break
            poly = quotient
            stripped += 1
    return poly, stripped


def trace_polynomial(poly: Poly) -> Poly | None:
    """``h`` with ``poly(x) = x^k h(x + 1/x)`` for a palindromic ``poly`` of degree ``2k``."""

    coefficients = poly.all_coeffs()
    degree = len(coefficients) - 1
    if degree % 2 or coefficients != coefficients[::-1]:
        return None
    k = degree // 2
    s = Symbol("s")
    chebyshev = [Poly(2, s, domain=QQ), Poly(s, s, domain=QQ)]
    while len(chebyshev) <= k:
        chebyshev.append(chebyshev[1] * chebyshev[-1] - chebyshev[-2])
    low = list(reversed(coefficients))
    result = Poly(low[k], s, domain=QQ)
    for j in range(1, k + 1):
        result += chebyshev[j] * low[k + j]
    return result


def unit_circle_roots(poly: Poly) -> int:
    """Number of roots (with multiplicity) of ``poly`` on the unit circle, if all are; else -1."""

    remaining, stripped = _strip_unit_roots(poly)
    if remaining.degree() == 0:
        return stripped
    h = trace_polynomial(remaining.monic())
    if h is None:
        return -1
    inside = 0
    for factor, multiplicity in h.sqf_list()[1]:
        inside += multiplicity * factor.count_roots(-2, 2)
    if inside != h.degree():
        return -1
    return stripped + remaining.degree()


__all__ = [
    "CharPoly",
    "SpectraError",
    "newton_coefficients",
    "power_sums",
    "product",
    "trace_polynomial",
    "traces_to_charpoly",
    "unit_circle_roots",
]
