"""Vectorised log/exp tables for one :class:`ExtField`.

The tables turn multiplication into index arithmetic and make the quadratic
character a parity lookup, so whole fibres can be evaluated with numpy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np
from numpy.typing import NDArray
from sympy import factorint

from .extension import CharacteristicError, ExtField, FieldError

logger = logging.getLogger(__name__)

TABLE_LIMIT = 1 << 26
"""Fields larger than this never get tables."""

IntArray = NDArray[np.int64]


def primitive_element(field: ExtField) -> int:
    """Smallest encoded generator of the multiplicative group."""

    order = field.q - 1
    primes = list(factorint(order))
    for candidate in range(1, field.q):
        if order == 1 or all(field.pow(candidate, order // ell) != 1 for ell in primes):
            return candidate
    raise FieldError(f"{field} has no primitive element")  # pragma: no cover


def _multiplication_matrix(field: ExtField, value: int) -> IntArray:
    """Matrix of ``x -> value * x`` on coordinate vectors (columns are images of basis)."""

    m = field.m
    columns = []
    for i in range(m):
        basis = field.from_digits([1 if j == i else 0 for j in range(m)])
        columns.append(field.digits(field.mul(value, basis)))
    return np.array(columns, dtype=np.int64).T


@dataclass(frozen=True, slots=True, eq=False)
class FieldTables:
    """Discrete log and antilog tables with vectorised field operations."""

    field: ExtField
    generator: int
    exp: IntArray
    log: IntArray
    chi: NDArray[np.int8]
    powers: IntArray
    zech: IntArray

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        return self.field.q - 1

    def elements(self) -> IntArray:
        return np.arange(self.q, dtype=np.int64)

    # coordinates ------------------------------------------------------

    def digits(self, values: IntArray) -> IntArray:
        """Shape ``values.shape + (m,)`` array of coordinates."""

        return (values[..., None] // self.powers) % self.field.p

    def from_digits(self, digits: IntArray) -> IntArray:
        return ((digits % self.field.p) * self.powers).sum(axis=-1)

    # vectorised arithmetic -------------------------------------------

    def add(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        left = np.asarray(a, dtype=np.int64)
        right = np.asarray(b, dtype=np.int64)
        if self.field.m == 1:
            return (left + right) % self.field.p
        # a + b = a * (1 + b/a) through the Zech logarithm of b/a.
        la, lb = self.log[left], self.log[right]
        shift = self.zech[(lb - la) % self.order]
        total = np.where(shift < 0, 0, self.exp[(la + shift) % self.order])
        return np.where(left == 0, right, np.where(right == 0, left, total))

    def add_digits(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        left = np.asarray(a, dtype=np.int64)
        right = np.asarray(b, dtype=np.int64)
        return self.from_digits(self.digits(left) + self.digits(right))

    def neg(self, a: IntArray | int) -> IntArray:
        values = np.asarray(a, dtype=np.int64)
        if self.field.m == 1:
            return (-values) % self.field.p
        return self.from_digits(-self.digits(values))

    def sub(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return self.add(a, self.neg(b))

    def mul(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        left = np.asarray(a, dtype=np.int64)
        right = np.asarray(b, dtype=np.int64)
        logs = (self.log[left] + self.log[right]) % self.order
        product = self.exp[logs]
        return np.where((left == 0) | (right == 0), 0, product)

    def power(self, a: IntArray | int, exponent: int) -> IntArray:
        values = np.asarray(a, dtype=np.int64)
        if exponent == 0:
            return np.ones_like(values)
        logs = (self.log[values] * (exponent % self.order)) % self.order
        return np.where(values == 0, 0, self.exp[logs])

    def character(self, a: IntArray | int) -> NDArray[np.int8]:
        return self.chi[np.asarray(a, dtype=np.int64)]

    def frobenius(self, a: IntArray | int, power: int = 1) -> IntArray:
        return self.power(a, pow(self.field.p, power, self.order))

    def sqrt(self, a: int) -> int | None:
        if a == 0:
            return 0
        index = int(self.log[a])
        if index % 2:
            return None
        root = int(self.exp[index // 2])
        return min(root, int(self.neg(root)))

    def embed_polynomial(self, coeffs: list[int]) -> list[int]:
        """Prime-field coefficients embedded as field elements."""

        return [c % self.field.p for c in coeffs]

    def evaluate(self, coeffs: list[int], points: IntArray) -> IntArray:
        """Horner evaluation of a prime-field polynomial (high to low) at every point."""

        values = np.asarray(points, dtype=np.int64)
        result = np.zeros_like(values)
        for coefficient in self.embed_polynomial(coeffs):
            result = self.add(self.mul(result, values), coefficient)
        return result


def build_tables(field: ExtField) -> FieldTables:
    if field.p == 2:
        raise CharacteristicError("odd characteristic required")
    if field.q > TABLE_LIMIT:
        raise FieldError(f"{field} is too large for log tables")
    return _tables(field)


@lru_cache(maxsize=16)
def _tables(field: ExtField) -> FieldTables:
    q, p, m = field.q, field.p, field.m
    order = q - 1
    generator = primitive_element(field)
    powers = np.array([p**i for i in range(m)], dtype=np.int64)

    block = isqrt(order) + 1
    first = [1]
    for _ in range(block - 1):
        first.append(field.mul(first[-1], generator))
    first_array = np.array(first, dtype=np.int64)
    first_digits = (first_array[:, None] // powers) % p

    exp = np.empty(order, dtype=np.int64)
    step = field.pow(generator, block)
    current = 1
    for start in range(0, order, block):
        matrix = _multiplication_matrix(field, current)
        chunk = (first_digits @ matrix.T) % p
        values = (chunk * powers).sum(axis=1)
        stop = min(start + block, order)
        exp[start:stop] = values[: stop - start]
        current = field.mul(current, step)

    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    if (log[1:] < 0).any():
        raise FieldError(f"{generator} does not generate {field}")

    chi = np.where(log % 2 == 0, 1, -1).astype(np.int8)
    chi[0] = 0
    ones = np.zeros(m, dtype=np.int64)
    ones[0] = 1
    shifted = (((exp[:, None] // powers) % p + ones) % p * powers).sum(axis=1)
    zech = log[shifted]
    logger.debug("built tables for %s (generator %d)", field, generator)
    return FieldTables(field, generator, exp, log, chi, powers, zech)


__all__ = ["FieldTables", "TABLE_LIMIT", "build_tables", "primitive_element"]
