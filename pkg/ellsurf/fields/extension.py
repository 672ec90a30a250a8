"""Finite fields ``F_{p^m}`` with integer-encoded elements.

An element is stored as the integer whose base-``p`` digits are its
coordinates with respect to ``1, a, a^2, ...`` where ``a`` is a root of the
field modulus.  This encoding makes ``F_p`` itself the integers ``0..p-1``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

logger = logging.getLogger(__name__)


class FieldError(ValueError):
    """Raised for invalid field parameters or unsupported characteristics."""


class CharacteristicError(FieldError):
    """Raised by operations that need an odd characteristic."""


@lru_cache(maxsize=64)
def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree ``m`` over ``F_p``."""

    if m == 1:
        return (1, 0)
    for tail in itertools.product(range(p), repeat=m):
        candidate = [1, *tail]
        if tail[-1] and gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


@dataclass(frozen=True, slots=True)
class ExtField:
    """The field ``F_p[a]/(modulus(a))`` of order ``q = p**m``."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.m < 1 or len(self.modulus) != self.m + 1 or self.modulus[0] != 1:
            raise FieldError("modulus must be monic of degree m")
        if self.m > 1 and not gf_irreducible_p(list(self.modulus), self.p, ZZ):
            raise FieldError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @classmethod
    def build(cls, p: int, m: int = 1) -> ExtField:
        return _build(p, m)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def subfield_degree_ok(self, d: int) -> bool:
        return d >= 1 and self.m % d == 0

    # encoding -----------------------------------------------------------

    def digits(self, value: int) -> list[int]:
        """Coordinates low to high."""

        out = []
        for _ in range(self.m):
            value, digit = divmod(value, self.p)
            out.append(digit)
        return out

    def from_digits(self, digits: list[int]) -> int:
        value = 0
        for digit in reversed(digits):
            value = value * self.p + digit % self.p
        return value

    def _to_poly(self, value: int) -> list[int]:
        coeffs = list(reversed(self.digits(value)))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        return coeffs

    def _from_poly(self, coeffs: list[int]) -> int:
        return self.from_digits(list(reversed([int(c) % self.p for c in coeffs])))

    # scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        pairs = zip(self.digits(a), self.digits(b), strict=True)
        return self.from_digits([x + y for x, y in pairs])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        product = gf_mul(self._to_poly(a), self._to_poly(b), self.p, ZZ)
        return self._from_poly(gf_rem(product, list(self.modulus), self.p, ZZ))

    def pow(self, a: int, exponent: int) -> int:
        if exponent < 0:
            return self.pow(self.inv(a), -exponent)
        if self.m == 1:
            return pow(a, exponent, self.p)
        power = gf_pow_mod(self._to_poly(a), exponent, list(self.modulus), self.p, ZZ)
        return self._from_poly(power)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    def embed(self, value: int) -> int:
        """Image of the prime-field residue ``value``."""

        return value % self.p

    def frobenius(self, a: int, power: int = 1) -> int:
        return self.pow(a, self.p**power)

    def in_subfield(self, a: int, d: int) -> bool:
        """Fixed-point test ``a**(p**d) == a``."""

        return self.frobenius(a, d) == a

    # characters and square roots ----------------------------------------

    def _require_odd(self) -> None:
        if self.p == 2:
            raise CharacteristicError("odd characteristic required")

    def character(self, a: int) -> int:
        """Quadratic character by Euler's criterion."""

        self._require_odd()
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def _nonresidue(self) -> int:
        for candidate in range(2, self.q):
            if self.character(candidate) == -1:
                return candidate
        raise FieldError("no quadratic non-residue")  # pragma: no cover

    def sqrt(self, a: int) -> int | None:
        """Tonelli-Shanks square root; the smaller of the two roots in the integer encoding."""

        self._require_odd()
        if a == 0:
            return 0
        if self.character(a) != 1:
            return None
        odd, twos = self.q - 1, 0
        while odd % 2 == 0:
            odd //= 2
            twos += 1
        z = self.pow(self._nonresidue(), odd)
        x = self.pow(a, (odd + 1) // 2)
        b = self.pow(a, odd)
        m = twos
        while b != 1:
            i, square = 0, b
            while square != 1:
                square = self.mul(square, square)
                i += 1
            factor = self.pow(z, 1 << (m - i - 1))
            x = self.mul(x, factor)
            z = self.mul(factor, factor)
            b = self.mul(b, z)
            m = i
        return min(x, self.neg(x))

    def __str__(self) -> str:
        return f"F_{self.p}^{self.m}" if self.m > 1 else f"F_{self.p}"


@lru_cache(maxsize=64)
def _build(p: int, m: int) -> ExtField:
    field = ExtField(p, m, smallest_irreducible(p, m))
    logger.debug("built %s with modulus %s", field, field.modulus)
    return field


@dataclass(frozen=True, slots=True)
class FFElement:
    """An element of an :class:`ExtField`."""

    field: ExtField
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} does not encode an element of {self.field}")

    @classmethod
    def from_coords(cls, field: ExtField, coords: list[int]) -> FFElement:
        return cls(field, field.from_digits(coords))

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.value))

    def _other(self, other: object) -> int:
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(other, int):
            return self.field.embed(other)
        if isinstance(other, Fraction):
            denominator = self.field.inv(self.field.embed(other.denominator))
            return self.field.mul(self.field.embed(other.numerator), denominator)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other: object) -> FFElement:
        return FFElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other: object) -> FFElement:
        return FFElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other: object) -> FFElement:
        return FFElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other: object) -> FFElement:
        return FFElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self) -> FFElement:
        return FFElement(self.field, self.field.neg(self.value))

    def __truediv__(self, other: object) -> FFElement:
        return FFElement(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __rtruediv__(self, other: object) -> FFElement:
        return FFElement(self.field, self.field.mul(self._other(other), self.field.inv(self.value)))

    def __pow__(self, exponent: int) -> FFElement:
        return FFElement(self.field, self.field.pow(self.value, exponent))

    def __bool__(self) -> bool:
        return self.value != 0


def quadratic_character(x: FFElement) -> int:
    """``0`` for zero, ``1`` for nonzero squares, ``-1`` otherwise."""

    return x.field.character(x.value)


def sqrt(x: FFElement) -> FFElement | None:
    root = x.field.sqrt(x.value)
    return None if root is None else FFElement(x.field, root)


__all__ = [
    "CharacteristicError",
    "ExtField",
    "FFElement",
    "FieldError",
    "quadratic_character",
    "smallest_irreducible",
    "sqrt",
]
