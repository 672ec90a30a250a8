"""Numerical invariants of an elliptic surface read off its singular fibers."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

from ..algebra import UniPoly
from ..curves import WeierstrassModel
from ..curves.reduction import ResidueMap, reduce_mod_p
from .minimal import MinimalModel, minimal_model
from .symbols import FiniteAbelianGroup
from .tate import KodairaFiber, fiber_table

logger = logging.getLogger(__name__)


class ConfigurationError(ValueError):
    """Raised when the fibers do not add up to an elliptic surface."""


class KodairaDimension(str, Enum):
    MINUS_INFINITY = "-oo"
    ZERO = "0"
    ONE = "1"


_SURFACE_KIND = {
    KodairaDimension.MINUS_INFINITY: "rational",
    KodairaDimension.ZERO: "K3",
    KodairaDimension.ONE: "properly elliptic",
}


@dataclass(frozen=True, slots=True)
class SurfaceInvariants:
    euler: int
    chi: int
    kodaira_dimension: KodairaDimension
    b2: int
    trivial_rank: int
    torsion_bound: FiniteAbelianGroup
    hodge_bound: int

    @property
    def kind(self) -> str:
        return _SURFACE_KIND[self.kodaira_dimension]

    @property
    def picard_bound(self) -> int:
        """``h^{1,1}``, the Lefschetz bound on the Picard number in characteristic zero."""

        return self.hodge_bound


def torsion_injection_bound(fibers: Iterable[KodairaFiber]) -> FiniteAbelianGroup:
    """``prod_v G(F_v)`` over geometric fibers; torsion sections embed into it."""

    return FiniteAbelianGroup.product(fiber.group**fiber.degree for fiber in fibers)


def invariants_from_fibers(fibers: Sequence[KodairaFiber]) -> SurfaceInvariants:
    bad = [fiber for fiber in fibers if not fiber.is_good]
    euler = sum(fiber.degree * fiber.euler for fiber in bad)
    if euler <= 0 or euler % 12:
        raise ConfigurationError(f"fiber configuration inconsistent (e = {euler})")
    chi = euler // 12
    if chi == 1:
        dimension = KodairaDimension.MINUS_INFINITY
    elif chi == 2:
        dimension = KodairaDimension.ZERO
    else:
        dimension = KodairaDimension.ONE
    trivial = 2 + sum(fiber.degree * (fiber.components - 1) for fiber in bad)
    b2 = euler - 2
    if trivial > b2:
        raise ConfigurationError("fiber configuration inconsistent (trivial rank exceeds b2)")
    return SurfaceInvariants(
        euler=euler,
        chi=chi,
        kodaira_dimension=dimension,
        b2=b2,
        trivial_rank=trivial,
        torsion_bound=torsion_injection_bound(bad),
        hodge_bound=10 * chi,
    )


def surface_invariants(
    model: WeierstrassModel | MinimalModel, candidates: Sequence[UniPoly] = ()
) -> SurfaceInvariants:
    """``e``, ``chi``, Kodaira dimension, ``b2``, trivial rank and the torsion bound."""

    minimal = model if isinstance(model, MinimalModel) else minimal_model(model)
    invariants = invariants_from_fibers(fiber_table(minimal, candidates))
    if invariants.chi != minimal.chi:
        raise ConfigurationError(
            f"fiber configuration inconsistent (chi {invariants.chi} vs weight {minimal.chi})"
        )
    return invariants


def trivial_lattice_cycles(fibers: Iterable[KodairaFiber]) -> list[int]:
    """Cycle lengths of ``q``-Frobenius on the classes spanning the trivial lattice.

    The zero section and the fiber class are fixed; a cycle of length ``l``
    of the ``q^d``-Frobenius on the components of a fiber over a place of
    degree ``d`` becomes one cycle of length ``d * l``.
    """

    lengths = [1, 1]
    for fiber in fibers:
        if fiber.is_good:
            continue
        if fiber.frobenius_action is None:
            raise ConfigurationError(f"no Frobenius action at {fiber.place}")
        lengths.extend(fiber.degree * length for length in fiber.frobenius_action.class_cycles())
    return sorted(lengths)


# ---------------------------------------------------------------------------
# Good reduction
# ---------------------------------------------------------------------------


def geometric_configuration(fibers: Iterable[KodairaFiber]) -> Counter[str]:
    """Kodaira symbols counted over the algebraic closure."""

    counts: Counter[str] = Counter()
    for fiber in fibers:
        if not fiber.is_good:
            counts[str(fiber.symbol)] += fiber.degree
    return counts


def degree_patterns(fibers: Iterable[KodairaFiber]) -> dict[str, list[int]]:
    patterns: dict[str, list[int]] = {}
    for fiber in fibers:
        if not fiber.is_good:
            patterns.setdefault(str(fiber.symbol), []).append(fiber.degree)
    return {symbol: sorted(degrees) for symbol, degrees in sorted(patterns.items())}


@dataclass(frozen=True, slots=True)
class ReductionReport:
    prime: int
    holds: bool
    characteristic_zero: dict[str, list[int]]
    reduced: dict[str, list[int]]
    mismatches: list[str] = field(default_factory=list)
    fibers: list[KodairaFiber] = field(default_factory=list, compare=False)

    def __bool__(self) -> bool:
        return self.holds


def verify_good_reduction(
    model: WeierstrassModel,
    prime: int | ResidueMap,
    candidates: Sequence[UniPoly] = (),
) -> ReductionReport:
    """Compare the singular fibers of ``model`` with those of its reduction.

    Reduction is good when every Kodaira type occurs over ``F_p``-bar as
    often as over ``Q``-bar and no new bad places appear.  The report lists
    residue degrees of the places carrying each type on both sides.
    """

    residue = prime if isinstance(prime, ResidueMap) else ResidueMap(prime)
    reduced = reduce_mod_p(model, residue)
    zero_fibers = fiber_table(model, candidates)
    reduced_fibers = fiber_table(reduced)
    expected = geometric_configuration(zero_fibers)
    found = geometric_configuration(reduced_fibers)
    mismatches = []
    for symbol in sorted(set(expected) | set(found)):
        if expected[symbol] != found[symbol]:
            mismatches.append(
                f"{symbol}: {expected[symbol]} in characteristic zero, "
                f"{found[symbol]} modulo {residue.prime}"
            )
    holds = not mismatches
    verdict = "good" if holds else "bad"
    logger.info("reduction of %s at %s is %s", model.name or "model", residue.prime, verdict)
    return ReductionReport(
        prime=residue.prime,
        holds=holds,
        characteristic_zero=degree_patterns(zero_fibers),
        reduced=degree_patterns(reduced_fibers),
        mismatches=mismatches,
        fibers=reduced_fibers,
    )


__all__ = [
    "ConfigurationError",
    "KodairaDimension",
    "ReductionReport",
    "SurfaceInvariants",
    "degree_patterns",
    "geometric_configuration",
    "invariants_from_fibers",
    "surface_invariants",
    "torsion_injection_bound",
    "trivial_lattice_cycles",
    "verify_good_reduction",
]
