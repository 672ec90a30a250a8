"""The height pairing on Mordell-Weil groups of elliptic surfaces.

The height of a section is ``2 chi + 2 (P.O) - sum_v contr_v(P)`` and the
pairing follows by polarization, ``<P, Q> = (h(P+Q) - h(P) - h(Q)) / 2``.
Everything is read off the globally minimal short model:

* ``(P.O)`` is half the pole order of ``X`` summed over all places, with
  the chart ``X_inf = s^{2N} X(1/s)`` at infinity;
* ``contr_v`` comes from the valuations of ``3X^2 + A``, ``2Y`` and
  ``psi_3 = 3X^4 + 6AX^2 + 12BX - A^2`` at ``v``: a point meeting the
  identity component contributes nothing, on ``I_n`` the component index is
  ``k = min(v(2Y), n/2)`` with contribution ``k (n - k) / n``, and on
  additive fibers the contribution is ``2 v(2Y) / 3`` when
  ``v(psi_3) >= 3 v(2Y)`` and ``v(psi_3) / 4`` otherwise.

Each value is checked against the contribution table of the Kodaira type
at ``v``; a place of degree ``d`` over the coefficient field counts ``d``
times.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import Matrix, Rational

from ..algebra import RationalFunction, UniPoly
from ..algebra.places import Place
from ..curves import AffinePoint, CurvePoint, WeierstrassModel
from ..fibers.minimal import INFINITE_VALUATION, LocalModel, MinimalModel, minimal_model
from ..fibers.symbols import KodairaSymbol
from ..fibers.tate import bad_places, classify
from .sections import LatticeError, Section, SectionLike, as_point

logger = logging.getLogger(__name__)


class HeightError(LatticeError):
    """Raised when a local contribution does not match the fiber type."""


# ---------------------------------------------------------------------------
# Local contributions
# ---------------------------------------------------------------------------


_ADDITIVE_CONTRIBUTIONS: dict[str, tuple[Fraction, ...]] = {
    "II": (),
    "II*": (),
    "III": (Fraction(1, 2),),
    "III*": (Fraction(3, 2),),
    "IV": (Fraction(2, 3),),
    "IV*": (Fraction(4, 3),),
}


def contribution_table(symbol: KodairaSymbol) -> frozenset[Fraction]:
    """Every value ``contr_v`` can take on a fiber of type ``symbol``."""

    if symbol.name == "I":
        n = symbol.n
        return frozenset(Fraction(k * (n - k), n) for k in range(max(n, 1)))
    if symbol.name == "I*":
        return frozenset({Fraction(0), Fraction(1), 1 + Fraction(symbol.n, 4)})
    return frozenset({Fraction(0), *_ADDITIVE_CONTRIBUTIONS[symbol.name]})


def _valuation(value: RationalFunction, uniformizer: UniPoly) -> int:
    if value.is_zero:
        return INFINITE_VALUATION
    return value.valuation(uniformizer)


@dataclass(frozen=True, slots=True)
class LocalContribution:
    place: Place
    symbol: KodairaSymbol
    contribution: Fraction

    @property
    def total(self) -> Fraction:
        """Contribution of all geometric places over ``place``."""

        return self.contribution * self.place.degree


def _chart(
    minimal: MinimalModel, local: LocalModel, x: RationalFunction, y: RationalFunction
) -> tuple[RationalFunction, RationalFunction]:
    if not local.place.is_infinity:
        return x, y
    s = RationalFunction.gen(minimal.domain)
    inverse = s.inverse()
    n = minimal.weight
    return x.compose(inverse) * s ** (2 * n), y.compose(inverse) * s ** (3 * n)


def local_contribution(
    minimal: MinimalModel, local: LocalModel, point: AffinePoint
) -> LocalContribution:
    """``contr_v`` of a point of ``minimal.short_model()``."""

    symbol = classify(local.va, local.vb, local.vdelta)
    x, y = _chart(minimal, local, point.x, point.y)
    a = RationalFunction.from_polys(local.a)
    b = RationalFunction.from_polys(local.b)
    pi = local.uniformizer
    v_tangent = _valuation(3 * x**2 + a, pi)
    v_psi2 = _valuation(2 * y, pi)
    if v_tangent <= 0 or v_psi2 <= 0:
        value = Fraction(0)
    elif local.va == 0:
        n = local.vdelta
        k = min(Fraction(v_psi2), Fraction(n, 2))
        value = k * (n - k) / n
    else:
        v_psi3 = _valuation(3 * x**4 + 6 * a * x**2 + 12 * b * x - a**2, pi)
        if v_psi3 >= 3 * v_psi2:
            value = Fraction(2 * v_psi2, 3)
        else:
            value = Fraction(v_psi3, 4)
    if value not in contribution_table(symbol):
        raise HeightError(
            f"component identification ambiguous at {local.place}: contribution {value} "
            f"on a fiber of type {symbol}"
        )
    return LocalContribution(local.place, symbol, value)


# ---------------------------------------------------------------------------
# Heights
# ---------------------------------------------------------------------------


class HeightPairing:
    """Heights on one model, with the per-place data of each point cached."""

    def __init__(self, model: WeierstrassModel, candidates: Sequence[UniPoly] = ()) -> None:
        self.model = model
        self.minimal = minimal_model(model)
        self.places = bad_places(self.minimal, candidates)
        self._locals = [self.minimal.local(place) for place in self.places]
        self._contacts: dict[CurvePoint, tuple[LocalContribution, ...]] = {}
        self._heights: dict[CurvePoint, Fraction] = {}
        logger.debug(
            "height pairing on %s: chi %s, %d bad places",
            model.name or "model",
            self.chi,
            len(self.places),
        )

    @property
    def chi(self) -> int:
        return self.minimal.chi

    def _short(self, point: CurvePoint) -> CurvePoint:
        if point.curve != self.model:
            raise LatticeError("the point lies on another model")
        return self.minimal.map_point(point)

    def contacts(self, value: SectionLike) -> tuple[LocalContribution, ...]:
        """Local contributions at every bad place."""

        point = as_point(value)
        if point not in self._contacts:
            short = self._short(point)
            if isinstance(short, AffinePoint):
                found = tuple(local_contribution(self.minimal, lm, short) for lm in self._locals)
            else:
                found = ()
            self._contacts[point] = found
        return self._contacts[point]

    def zero_intersection(self, value: SectionLike) -> Fraction:
        """``(P.O)``: half the pole order of ``X`` over all places, infinity included."""

        short = self._short(as_point(value))
        if not isinstance(short, AffinePoint):
            raise LatticeError("the zero section meets itself with negative self-intersection")
        x = short.x
        finite = Fraction(x.den.degree, 2)
        order_at_infinity = 2 * self.minimal.weight + x.den.degree - x.num.degree
        return finite + Fraction(max(0, -order_at_infinity), 2)

    def height(self, value: SectionLike) -> Fraction:
        point = as_point(value)
        if point.is_infinity:
            return Fraction(0)
        if point not in self._heights:
            correction = sum((c.total for c in self.contacts(point)), Fraction(0))
            result = 2 * self.chi + 2 * self.zero_intersection(point) - correction
            if result < 0:
                raise HeightError(f"negative height {result}")
            self._heights[point] = result
        return self._heights[point]

    def pairing(self, first: SectionLike, second: SectionLike) -> Fraction:
        p, q = as_point(first), as_point(second)
        if p == q:
            return self.height(p)
        return (self.height(p + q) - self.height(p) - self.height(q)) / 2

    def gram(self, generators: Sequence[SectionLike], scale: int = 1) -> HeightGram:
        points = [as_point(g) for g in generators]
        rows = tuple(
            tuple(scale * self.pairing(points[i], points[j]) for j in range(len(points)))
            for i in range(len(points))
        )
        names = tuple(g.name if isinstance(g, Section) else "" for g in generators)
        return HeightGram(rows, scale, names)


def height_pairing(
    first: SectionLike, second: SectionLike, pairing: HeightPairing | None = None
) -> Fraction:
    """``<P, Q>``; builds a :class:`HeightPairing` for the model of ``first`` when needed."""

    pairing = pairing or HeightPairing(as_point(first).curve)
    return pairing.pairing(first, second)


# ---------------------------------------------------------------------------
# Gram matrices and index bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class HeightGram:
    """Pairings ``scale * <P_i, P_j>``; ``scale`` is 1 or the integral scaling 4."""

    entries: tuple[tuple[Fraction, ...], ...]
    scale: int = 1
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.scale not in (1, 4):
            raise LatticeError("the Gram scale is 1 or 4")
        size = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != size:
                raise LatticeError("the Gram matrix must be square")
            if row[i] < 0:
                raise LatticeError(f"negative diagonal entry {row[i]}")
            for j in range(i):
                if row[j] != self.entries[j][i]:
                    raise LatticeError("the Gram matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def matrix(self) -> Matrix:
        return Matrix(
            [[Rational(e.numerator, e.denominator) for e in row] for row in self.entries]
        )

    @property
    def determinant(self) -> Fraction:
        if not self.entries:
            return Fraction(1)
        value = self.matrix().det()
        return Fraction(int(value.p), int(value.q))

    def rescaled(self, scale: int) -> HeightGram:
        factor = Fraction(scale, self.scale)
        rows = tuple(tuple(factor * e for e in row) for row in self.entries)
        return HeightGram(rows, scale, self.names)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.entries)


@dataclass(frozen=True, slots=True)
class IndexBound:
    """``det`` of the Gram matrix and every ``n`` with ``n^2 | det``."""

    determinant: Fraction
    indices: tuple[int, ...]

    @property
    def largest(self) -> int:
        return self.indices[-1]


def gram_index_bound(gram: HeightGram, rank: int | None = None) -> IndexBound:
    """Possible indices ``[L : L']`` of the sublattice spanned by the generators.

    ``det L' = n^2 det L`` with ``det L`` integral for an integrally scaled
    pairing, so ``n^2`` divides ``det L'``.
    """

    if rank is not None and rank != gram.size:
        raise LatticeError(f"{gram.size} generators for a lattice of rank {rank}")
    determinant = gram.determinant
    if determinant == 0:
        raise LatticeError("dependent generators")
    if determinant.denominator != 1:
        raise LatticeError(f"determinant {determinant} is not integral; rescale the pairing")
    value = determinant.numerator
    indices = tuple(n for n in range(1, isqrt(value) + 1) if value % (n * n) == 0)
    logger.info("Gram determinant %s; index divides %s", value, indices[-1])
    return IndexBound(determinant, indices)


__all__ = [
    "HeightError",
    "HeightGram",
    "HeightPairing",
    "IndexBound",
    "LocalContribution",
    "contribution_table",
    "gram_index_bound",
    "height_pairing",
    "local_contribution",
]
