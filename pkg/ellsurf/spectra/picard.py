"""Upper bounds on Picard numbers from Frobenius eigenvalues.

The Néron–Severi group of the geometric reduction injects into
``H^2(1)`` compatibly with Frobenius, and its image sits in the span of
eigenvalues of the form ``q * zeta`` with ``zeta`` a root of unity.  Counting
those eigenvalues bounds the geometric Picard number of the reduction, and
through specialization that of the surface in characteristic zero.

An eigenvalue ``q * zeta`` is exactly a root of ``P(q x) / q^deg`` that is
a root of unity; an irreducible factor that is not cyclotomic has roots
that are not algebraic integers or not of absolute value one, so exact
division by the cyclotomic polynomials finds all of them.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from math import gcd

from sympy import QQ, Poly, cyclotomic_poly, totient

from ..fibers import trivial_lattice_cycles
from ..fibers.tate import KodairaFiber
from .charpoly import X, CharPoly, SpectraError, product

logger = logging.getLogger(__name__)


def cyclotomic_multiplicities(charpoly: CharPoly) -> dict[int, int]:
    """``n -> multiplicity`` of ``Phi_n`` in the normalized polynomial."""

    remaining = charpoly.normalized()
    degree = charpoly.degree
    multiplicities: dict[int, int] = {}
    n = 1
    # totient(n) >= sqrt(n / 2), so no n beyond 2 * degree^2 can have totient <= degree
    while n <= 2 * degree * degree + 2:
        phi = int(totient(n))
        if phi <= remaining.degree():
            cyclotomic = Poly(cyclotomic_poly(n, X), X, domain=QQ)
            count = 0
            while remaining.degree() >= phi:
                quotient, remainder = remaining.div(cyclotomic)
                if not remainder.is_zero:
                    break
                remaining = quotient
                count += 1
            if count:
                multiplicities[n] = count
        n += 1
    return multiplicities


def cyclotomic_count(charpoly: CharPoly) -> int:
    """Eigenvalues ``q * zeta`` counted with multiplicity."""

    return sum(
        multiplicity * int(totient(n))
        for n, multiplicity in cyclotomic_multiplicities(charpoly).items()
    )


def trivial_lattice_charpoly(
    fibers: Iterable[KodairaFiber],
    p: int,
    *,
    base_power: int = 1,
    extra: Iterable[tuple[int, int]] = (),
) -> CharPoly:
    """Frobenius of ``F_q``, ``q = p**base_power``, on the trivial lattice.

    A cycle of length ``l`` of the ``p``-Frobenius splits into ``gcd(l, r)``
    cycles of length ``l / gcd(l, r)`` under its ``r``-th power, and each
    cycle of length ``f`` contributes ``x^f - q^f``.  ``extra`` declares
    further stable classes by ``(cycle length, sign)`` for the ``q``-Frobenius.
    """

    q = p**base_power
    factors = []
    for length in trivial_lattice_cycles(fibers):
        split = gcd(length, base_power)
        factors.extend([CharPoly.cycle(length // split, q)] * split)
    factors.extend(CharPoly.cycle(length, q, sign) for length, sign in extra)
    return product(factors, q)


@dataclass(frozen=True, slots=True)
class PicardBoundReport:
    cyclotomic: int
    trivial_rank: int
    q: int

    @property
    def bound(self) -> int:
        return self.cyclotomic

    @property
    def mordell_weil_bound(self) -> int:
        return self.cyclotomic - self.trivial_rank

    @property
    def conclusion(self) -> str:
        if self.mordell_weil_bound == 0:
            return f"Picard rank = {self.trivial_rank}; Mordell-Weil rank 0"
        return (
            f"Picard rank <= {self.bound}; Mordell-Weil rank <= {self.mordell_weil_bound}"
        )


def picard_bound(charpoly: CharPoly, trivial_rank: int) -> PicardBoundReport:
    """Bound the geometric Picard number by the cyclotomic eigenvalue count."""

    report = PicardBoundReport(cyclotomic_count(charpoly), trivial_rank, charpoly.q)
    if report.cyclotomic < trivial_rank:
        raise SpectraError(
            f"only {report.cyclotomic} eigenvalues q*zeta for a trivial lattice of rank "
            f"{trivial_rank}"
        )
    logger.info("over F_%s: %s", charpoly.q, report.conclusion)
    return report


__all__ = [
    "PicardBoundReport",
    "cyclotomic_count",
    "cyclotomic_multiplicities",
    "picard_bound",
    "trivial_lattice_charpoly",
]
