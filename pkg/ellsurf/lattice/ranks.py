"""Rank bookkeeping: Shioda-Tate, twists along double covers and descent to ``Q(t)``."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import Matrix, Rational, eye, zeros

from ..algebra import GaloisMap
from ..curves import CurvePoint
from ..curves.twists import CoverCertificate
from ..fibers.tate import KodairaFiber
from .descent import SaturationVerdict
from .heights import HeightPairing, IndexBound
from .sections import LatticeError, Section, SectionLike, as_point
from .torsion import TorsionGroup

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Shioda-Tate
# ---------------------------------------------------------------------------


def trivial_rank(fibers: Iterable[KodairaFiber]) -> int:
    """``2 + sum (m_v - 1)`` over geometric fibers."""

    return 2 + sum((fiber.components - 1) * fiber.degree for fiber in fibers)


@dataclass(frozen=True, slots=True)
class ShiodaTate:
    rank: int
    exact: bool
    picard: int
    trivial_rank: int

    def __str__(self) -> str:
        relation = "=" if self.exact else "<="
        return f"rank {relation} {self.rank} ({self.picard} - {self.trivial_rank})"


def shioda_tate_rank(
    picard: int,
    fibers: Iterable[KodairaFiber] | int,
    *,
    exact: bool = True,
    independent: int = 0,
) -> ShiodaTate:
    """``rank = rho - 2 - sum (m_v - 1)``.

    With ``exact=False`` ``picard`` is an upper bound and so is the result;
    ``independent`` sections of nonzero Gram determinant close the gap when
    they reach the bound.
    """

    trivial = fibers if isinstance(fibers, int) else trivial_rank(fibers)
    rank = picard - trivial
    if rank < 0 or independent > rank or (exact and independent not in (0, rank)):
        raise LatticeError(
            f"inconsistent inputs: rho {picard}, trivial rank {trivial}, "
            f"{independent} independent sections"
        )
    result = ShiodaTate(rank, exact or independent == rank, picard, trivial)
    logger.info("Shioda-Tate: %s", result)
    return result


# ---------------------------------------------------------------------------
# Twists
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RankRecord:
    name: str
    rank: int
    provenance: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"rank {self.name} = {self.rank}"


def twist_rank_additivity(
    base: RankRecord, twist: RankRecord, certificate: CoverCertificate, name: str
) -> RankRecord:
    """``rank(E o phi) = rank E + rank E^(d)`` for a certified double cover ``phi``."""

    if not certificate.holds:
        raise LatticeError(
            f"{name} is not certified as the cover of {base.name} twisted by {twist.name}"
        )
    provenance = (
        *base.provenance,
        *twist.provenance,
        f"{name} = {base.name} o ({certificate.phi}); {twist.name} = twist by "
        f"{certificate.twist_class}",
    )
    record = RankRecord(name, base.rank + twist.rank, provenance)
    logger.info("%s = %s + %s", record, base.rank, twist.rank)
    return record


# ---------------------------------------------------------------------------
# Galois descent
# ---------------------------------------------------------------------------


def _to_sympy(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


@dataclass(frozen=True, slots=True)
class GaloisDescent:
    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    rank: int
    rational_generators: tuple[int, ...]

    def matrix(self, index: int = 0) -> Matrix:
        return Matrix(self.matrices[index])


def galois_action_matrix(
    pairing: HeightPairing, generators: Sequence[SectionLike], sigma: GaloisMap
) -> Matrix:
    """Columns express ``sigma(P_j)`` in the generators, modulo torsion."""

    model = pairing.model
    if model.conjugate(sigma) != model:
        raise LatticeError(f"{sigma} does not fix {model.name or 'the model'}")
    points = [as_point(g) for g in generators]
    gram = Matrix(
        [[_to_sympy(pairing.pairing(p, q)) for q in points] for p in points]
    )
    if gram.det() == 0:
        raise LatticeError("dependent generators")
    columns = []
    for point in points:
        image = Section(point).conjugate(sigma).point
        rhs = Matrix([_to_sympy(pairing.pairing(image, q)) for q in points])
        coefficients = gram.LUsolve(rhs)
        if any(not c.is_integer for c in coefficients):
            raise LatticeError(f"sigma({point}) is not expressible in the generators")
        combination: CurvePoint = model.infinity
        for c, q in zip(coefficients, points, strict=True):
            combination = combination + int(c) * q
        if pairing.height(image - combination) != 0:
            raise LatticeError(f"sigma({point}) differs from {list(coefficients)} by a section")
        columns.append([int(c) for c in coefficients])
    return Matrix(columns).T


def galois_rank_over_q(
    pairing: HeightPairing, generators: Sequence[SectionLike], sigmas: Sequence[GaloisMap]
) -> GaloisDescent:
    """Rank of the sublattice fixed by ``sigmas`` and the generators they fix."""

    n = len(generators)
    matrices = [galois_action_matrix(pairing, generators, sigma) for sigma in sigmas]
    stacked = zeros(0, n)
    for matrix in matrices:
        stacked = stacked.col_join(matrix - eye(n))
    rank = n - stacked.rank() if matrices else n
    fixed = tuple(
        j for j in range(n) if all(matrix[:, j] == eye(n)[:, j] for matrix in matrices)
    )
    frozen = tuple(
        tuple(tuple(int(matrix[i, j]) for j in range(n)) for i in range(n)) for matrix in matrices
    )
    logger.info("rank over Q(t): %s (fixed generators %s)", rank, fixed)
    return GaloisDescent(frozen, rank, fixed)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class MWReport:
    name: str
    geometric_rank: int
    rational_rank: int | None
    torsion: TorsionGroup | None
    generators: tuple[Section, ...]
    index: IndexBound | None = None
    saturation: SaturationVerdict | None = None
    inputs: tuple[str, ...] = field(default_factory=tuple)

    def lines(self) -> list[str]:
        lines = [f"{self.name}: geometric rank {self.geometric_rank}"]
        if self.rational_rank is not None:
            lines.append(f"rank over Q(t): {self.rational_rank}")
        if self.torsion is not None:
            lines.append(f"torsion: {self.torsion.group}")
        lines.extend(f"generator {section}" for section in self.generators)
        if self.index is not None:
            lines.append(
                f"Gram determinant {self.index.determinant}; index in {list(self.index.indices)}"
            )
        if self.saturation is not None:
            lines.append(f"2-descent: {self.saturation}")
        lines.extend(f"input: {source}" for source in self.inputs)
        return lines


__all__ = [
    "GaloisDescent",
    "MWReport",
    "RankRecord",
    "ShiodaTate",
    "galois_action_matrix",
    "galois_rank_over_q",
    "shioda_tate_rank",
    "trivial_rank",
    "twist_rank_additivity",
]
