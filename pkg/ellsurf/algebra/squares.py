"""Square classes of integers, polynomials and rational functions.

Classes live in ``F*/(F*)^2`` for ``F`` one of ``Q``, ``K``, ``F_p`` or the
function fields over them.  The *geometric* mode forgets constants and so
answers questions in the algebraic closure of the coefficient field; the
*rational* mode keeps track of the leading constant.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from sympy import factorint
from sympy.polys.sqfreetools import dup_sqf_list, dup_sqf_part

from .domains import (
    Domain,
    Element,
    is_algebraic_domain,
    is_finite_domain,
    is_rational_domain,
    to_fraction,
    to_element,
    to_int_mod,
)
from .functions import RationalFunction
from .numbers import element_sqrt
from .polys import UniPoly, product


class SquareClassError(ValueError):
    """Raised for square classes that are not defined, such as the class of zero."""


class SquareMode(str, Enum):
    GEOMETRIC = "geometric"
    RATIONAL = "rational"


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------


def squarefree_integer(value: int | Fraction) -> int:
    """Squarefree kernel of a nonzero rational, sign included: ``12 -> 3``, ``-8/3 -> -6``."""

    value = Fraction(value)
    if value == 0:
        raise SquareClassError("square class of zero undefined")
    sign = -1 if value < 0 else 1
    kernel = 1
    for prime, exponent in factorint(abs(value.numerator * value.denominator)).items():
        if exponent % 2:
            kernel *= prime
    return sign * kernel


def _least_nonresidue(prime: int) -> int:
    candidate = 2
    while pow(candidate, (prime - 1) // 2, prime) == 1:
        candidate += 1
    return candidate


def constant_class(domain: Domain, value: Element) -> int:
    """Integer label of the square class of a nonzero constant.

    Over ``Q`` this is the signed squarefree kernel.  Over ``F_p`` squares map
    to 1 and non-squares to the least non-residue.  Over a number field
    squares map to 1; rational non-squares keep their kernel over ``Q``.
    """

    if not value:
        raise SquareClassError("square class of zero undefined")
    if is_rational_domain(domain):
        return squarefree_integer(to_fraction(domain, value))
    if is_finite_domain(domain):
        prime = int(domain.mod)
        residue = to_int_mod(domain, value)
        if prime == 2 or pow(residue, (prime - 1) // 2, prime) == 1:
            return 1
        return _least_nonresidue(prime)
    if is_algebraic_domain(domain):
        if element_sqrt(domain, value) is not None:
            return 1
        if len(value.to_list()) == 1:
            return squarefree_integer(to_fraction(domain, value))
        raise SquareClassError("square classes of irrational constants are not tracked")
    raise TypeError(f"unsupported domain {domain}")


# ---------------------------------------------------------------------------
# Polynomial classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SquareClass:
    """``content * kernel`` modulo squares, with ``kernel`` monic and squarefree.

    In geometric mode ``content`` is always 1.
    """

    kernel: UniPoly
    content: int = 1
    mode: SquareMode = SquareMode.GEOMETRIC

    @property
    def sign(self) -> int:
        return -1 if self.content < 0 else 1

    @property
    def domain(self) -> Domain:
        return self.kernel.domain

    @property
    def is_trivial(self) -> bool:
        return self.kernel.is_one and self.content == 1

    def representative(self) -> UniPoly:
        return self.kernel.scale(self.content)

    def __mul__(self, other: SquareClass) -> SquareClass:
        if other.mode != self.mode:
            raise SquareClassError("cannot multiply classes of different modes")
        common = self.kernel.gcd(other.kernel)
        kernel = (self.kernel.exquo(common) * other.kernel.exquo(common)).monic()
        content = 1
        if self.mode is SquareMode.RATIONAL:
            # labels are read in the coefficient field, where 2 or -1 may be squares
            label = to_element(self.domain, self.content * other.content)
            content = constant_class(self.domain, label)
        return SquareClass(kernel, content, self.mode)

    def __str__(self) -> str:
        if self.content == 1:
            return str(self.kernel)
        if self.kernel.is_one:
            return str(self.content)
        return f"{self.content}*({self.kernel})"


def squarefree_part(
    value: UniPoly | int | Fraction, mode: SquareMode = SquareMode.RATIONAL
) -> SquareClass | int:
    """Square class of a nonzero integer or polynomial.

    Integers return their signed squarefree kernel; polynomials return a
    :class:`SquareClass` whose kernel is the product of the factors of odd
    multiplicity.
    """

    if isinstance(value, (int, Fraction)):
        return squarefree_integer(value)
    if value.is_zero:
        raise SquareClassError("square class of zero undefined")
    domain = value.domain
    _, factors = dup_sqf_list(value.rep, domain)
    kernel = product(
        (UniPoly._raw(list(f), domain).monic() for f, k in factors if k % 2), domain
    )
    content = 1
    if mode is SquareMode.RATIONAL:
        content = constant_class(domain, value.lc)
    return SquareClass(kernel, content, mode)


def function_class(
    value: RationalFunction, mode: SquareMode = SquareMode.GEOMETRIC
) -> SquareClass:
    """Square class of a nonzero rational function: numerator times denominator."""

    if value.is_zero:
        raise SquareClassError("square class of zero undefined")
    cls = squarefree_part(value.num * value.den, mode)
    assert isinstance(cls, SquareClass)
    return cls


def is_square(
    value: RationalFunction | UniPoly, mode: SquareMode = SquareMode.GEOMETRIC
) -> bool:
    """Squareness in ``F(t)`` (rational) or over the algebraic closure (geometric).

    The zero function counts as a square.
    """

    if isinstance(value, UniPoly):
        value = RationalFunction(value, UniPoly.one(value.domain))
    if value.is_zero:
        return True
    for poly in (value.num, value.den):
        if poly.is_constant:
            continue
        _, factors = dup_sqf_list(poly.rep, poly.domain)
        if any(k % 2 for _, k in factors):
            return False
    if mode is SquareMode.GEOMETRIC:
        return True
    return element_sqrt(value.domain, value.num.lc) is not None


def sqrt_function(
    value: RationalFunction, mode: SquareMode = SquareMode.RATIONAL
) -> RationalFunction | None:
    """Exact square root of ``value`` over its coefficient field, if one exists."""

    if value.is_zero:
        return value
    domain = value.domain
    roots: list[UniPoly] = []
    for poly in (value.num, value.den):
        _, factors = dup_sqf_list(poly.rep, domain)
        if any(k % 2 for _, k in factors):
            return None
        halves = (UniPoly._raw(list(f), domain) ** (k // 2) for f, k in factors)
        roots.append(product(halves, domain))
    lead = domain.quo(value.num.lc, roots[0].lc**2)
    scale = element_sqrt(domain, lead)
    if scale is None:
        if mode is SquareMode.RATIONAL:
            return None
        raise SquareClassError("square root requires a constant outside the coefficient field")
    return RationalFunction.from_polys(roots[0].scale(scale), roots[1])


# ---------------------------------------------------------------------------
# Coprime bases
# ---------------------------------------------------------------------------


def _refine(base: list[UniPoly], poly: UniPoly) -> list[UniPoly]:
    result: list[UniPoly] = []
    current = poly
    for element in base:
        common = element.gcd(current)
        if common.is_one:
            result.append(element)
            continue
        rest = element.exquo(common)
        if not rest.is_constant:
            result.append(rest.monic())
        result.append(common)
        current = current.exquo(common)
    if not current.is_constant:
        result.append(current.monic())
    return result


def coprime_base(polys: Iterable[UniPoly]) -> list[UniPoly]:
    """Pairwise coprime monic squarefree polynomials generating every input multiplicatively."""

    base: list[UniPoly] = []
    for poly in polys:
        if poly.is_zero:
            raise SquareClassError("square class of zero undefined")
        if poly.is_constant:
            continue
        _, factors = dup_sqf_list(poly.rep, poly.domain)
        for factor, _ in factors:
            piece = UniPoly._raw(list(factor), poly.domain).monic()
            if not piece.is_constant:
                base = _refine(base, piece)
    return sorted(base, key=lambda p: (p.degree, p.key()))


def parity_vector(poly: UniPoly, base: Sequence[UniPoly]) -> tuple[int, ...]:
    """Exponents mod 2 of ``poly`` over a coprime base containing all its factors."""

    if poly.is_zero:
        raise SquareClassError("square class of zero undefined")
    remaining = poly
    vector = []
    for element in base:
        exponent, remaining = remaining.strip_place(element)
        vector.append(exponent % 2)
    if not remaining.is_constant:
        raise SquareClassError(f"{poly} is not supported on the given base")
    return tuple(vector)


def squarefree_kernel(poly: UniPoly) -> UniPoly:
    """Monic radical of ``poly``."""

    return UniPoly._raw(dup_sqf_part(poly.rep, poly.domain), poly.domain).monic()


__all__ = [
    "SquareClass",
    "SquareClassError",
    "SquareMode",
    "constant_class",
    "coprime_base",
    "function_class",
    "is_square",
    "parity_vector",
    "sqrt_function",
    "squarefree_integer",
    "squarefree_kernel",
    "squarefree_part",
]
