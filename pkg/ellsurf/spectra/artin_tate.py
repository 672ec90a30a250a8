"""Discriminants of Néron–Severi lattices modulo squares.

For a K3 surface over ``F_q`` with ``q`` a square whose cyclotomic
eigenvalues all equal ``q``, the Artin–Tate formula ties the discriminant of
the Néron–Severi lattice to ``R(1/q)`` where
``det(1 - T Phi) = (1 - q T)^rho * R(T)``.  The Brauer group has square
order and ``q^alpha`` is a square, so modulo squares the discriminant is
the class of ``-R(1/q)``.

Two primes with the same cyclotomic count but different classes cannot
both have Picard lattices equal to the specialization of the lattice in
characteristic zero, so the geometric Picard number there drops by one.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import isqrt

from sympy import QQ, Poly

from ..algebra.squares import squarefree_integer
from .charpoly import X, CharPoly, SpectraError
from .picard import cyclotomic_multiplicities

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DiscriminantClass:
    """A signed squarefree integer, optionally labelled with its prime and cyclotomic count."""

    value: int
    prime: int | None = None
    rho: int | None = None

    def __post_init__(self) -> None:
        if self.value == 0 or squarefree_integer(self.value) != self.value:
            raise SpectraError(f"{self.value} is not a squarefree integer")

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class GateVerdict:
    conclusive: bool
    bound: int | None = None
    witness: tuple[DiscriminantClass, DiscriminantClass] | None = None

    @property
    def message(self) -> str:
        if not self.conclusive:
            return "inconclusive"
        assert self.witness is not None
        first, second = self.witness
        return f"rank <= {self.bound} (classes {first} and {second} differ)"

    def __str__(self) -> str:
        return self.message


def artin_tate_class(
    charpoly: CharPoly, rho_prime: int | None = None, *, prime: int | None = None
) -> DiscriminantClass:
    """The class of ``-R(1/q)`` for a full characteristic polynomial on ``H^2``."""

    q = charpoly.q
    if isqrt(q) ** 2 != q:
        raise SpectraError(f"q = {q} is not a square")
    multiplicities = cyclotomic_multiplicities(charpoly)
    if set(multiplicities) - {1}:
        orders = sorted(n for n in multiplicities if n != 1)
        raise SpectraError(f"eigenvalue q*zeta with zeta of order {orders} present")
    rho = multiplicities.get(1, 0)
    if rho_prime is not None and rho_prime != rho:
        raise SpectraError(f"rho' = {rho_prime} but (x - q) has multiplicity {rho}")
    rest, remainder = charpoly.to_poly().div(Poly(X - q, X, domain=QQ) ** rho)
    if not remainder.is_zero:
        raise SpectraError("inconsistent inputs")
    # R(1/q) = q^(-deg) rest(q), and q^(-deg) is a square
    value = rest.eval(q)
    if value == 0:
        raise SpectraError("R(1/q) = 0")
    klass = DiscriminantClass(squarefree_integer(-int(value)), prime, rho)
    logger.info("Artin-Tate class over F_%s: %s", q, klass)
    return klass


def discriminant_gate(classes: Sequence[DiscriminantClass], bound: int) -> GateVerdict:
    """Lower the Picard bound by one when two primes disagree on the discriminant."""

    if len(classes) < 2:
        raise SpectraError("need two primes")
    primes = [c.prime for c in classes if c.prime is not None]
    if len(set(primes)) != len(primes):
        raise SpectraError(f"primes {primes} are not distinct")
    counts = {c.rho for c in classes if c.rho is not None}
    if len(counts) > 1:
        raise SpectraError(f"cyclotomic counts {sorted(counts)} differ")
    first = classes[0]
    for other in classes[1:]:
        if other.value != first.value:
            return GateVerdict(True, bound - 1, (first, other))
    return GateVerdict(False)


__all__ = ["DiscriminantClass", "GateVerdict", "artin_tate_class", "discriminant_gate"]
