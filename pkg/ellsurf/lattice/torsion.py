"""Torsion sections of models with full 2-torsion over ``K(t)``.

Torsion sections inject into the product of the component groups of the
singular fibers, so only orders dividing the exponent of that bound are
tried.  2-power torsion is found by repeated halving: a point ``(x0, y0)``
of ``y^2 = (x - e1)(x - e2)(x - e3)`` lies in ``2E(K)`` exactly when every
``x0 - e_i`` is a square, and its halves have
``x = x0 + r1 r2 + r1 r3 + r2 r3`` with ``r_i^2 = x0 - e_i``.

``mode`` decides where squares are taken: :attr:`SquareMode.RATIONAL` asks
for square roots in ``K(t)`` itself, which is what a point with
coordinates in ``K(t)`` needs.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product as cartesian
from math import lcm

from ..algebra import RationalFunction
from ..algebra.squares import SquareClassError, SquareMode, is_square, sqrt_function
from ..curves import AffinePoint, CurveError, CurvePoint, PointError, WeierstrassModel
from ..fibers.symbols import FiniteAbelianGroup
from .sections import LatticeError, SectionLike, as_point

logger = logging.getLogger(__name__)


def _roots(model: WeierstrassModel) -> tuple[RationalFunction, ...]:
    if model.roots is None:
        raise CurveError("torsion search needs the factored form")
    return tuple(model.roots)


def _sqrt(value: RationalFunction, mode: SquareMode) -> RationalFunction | None:
    try:
        return sqrt_function(value, mode)
    except SquareClassError:
        return None


# ---------------------------------------------------------------------------
# Halving
# ---------------------------------------------------------------------------


def halve(value: SectionLike, mode: SquareMode = SquareMode.RATIONAL) -> list[AffinePoint]:
    """Every ``Q`` with ``2Q = P`` over the base field; empty when ``P`` is not in ``2E``."""

    point = as_point(value)
    model = point.curve
    roots = _roots(model)
    if point.is_infinity:
        return [model.point(e, 0) for e in roots]
    assert isinstance(point, AffinePoint)
    square_roots = []
    for e in roots:
        root = _sqrt(point.x - e, mode)
        if root is None:
            return []
        square_roots.append(root)
    halves: set[AffinePoint] = set()
    for signs in cartesian((1, -1), repeat=2):
        r1 = square_roots[0]
        r2 = signs[0] * square_roots[1]
        r3 = signs[1] * square_roots[2]
        x = point.x + r1 * r2 + r1 * r3 + r2 * r3
        cubic = (x - roots[0]) * (x - roots[1]) * (x - roots[2])
        y = _sqrt(cubic, mode)
        if y is None:
            continue
        for candidate_y in (y, -y):
            try:
                candidate = model.point(x, candidate_y)
            except PointError:
                continue
            if 2 * candidate == point:
                halves.add(candidate)
    return sorted(halves, key=str)


@dataclass(frozen=True, slots=True)
class HalvingWitness:
    """``x^2 - 2 e x + c = 0`` for the halves of ``T = (e, 0)`` and its discriminant."""

    target: AffinePoint
    linear: RationalFunction
    constant: RationalFunction
    discriminant: RationalFunction
    mode: SquareMode

    @property
    def is_square(self) -> bool:
        return is_square(self.discriminant, self.mode)

    @property
    def divisible(self) -> bool:
        """``T`` lies in ``2E``: the quadratic has roots in the base field."""

        return self.is_square


def doubling_witness(
    value: SectionLike, mode: SquareMode = SquareMode.GEOMETRIC
) -> HalvingWitness:
    """The quadratic cut out by ``x(2P) = e`` for a 2-torsion point ``(e, 0)``.

    ``x(2P) = e`` becomes ``(x^2 - 2 e x + e^2 - (e - e')(e - e''))^2 = 0``,
    so ``T`` is divisible by two exactly when the discriminant
    ``4 (e - e')(e - e'')`` is a square.
    """

    point = as_point(value)
    roots = _roots(point.curve)
    if point.is_infinity or not isinstance(point, AffinePoint) or point.y:
        raise LatticeError("the doubling witness needs a point of order two")
    index = roots.index(point.x)
    e = roots[index]
    others = [r for k, r in enumerate(roots) if k != index]
    product = (e - others[0]) * (e - others[1])
    linear = -2 * e
    constant = e**2 - product
    discriminant = linear**2 - 4 * constant
    return HalvingWitness(point, linear, constant, discriminant, mode)


# ---------------------------------------------------------------------------
# The torsion subgroup
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TorsionGroup:
    group: FiniteAbelianGroup
    generators: tuple[CurvePoint, ...]
    points: frozenset[CurvePoint]
    bound: FiniteAbelianGroup | None = None

    @property
    def order(self) -> int:
        return len(self.points)

    def contains(self, value: SectionLike) -> bool:
        return as_point(value) in self.points

    def __str__(self) -> str:
        names = ", ".join(str(g) for g in self.generators)
        return f"{self.group} generated by {names}" if names else str(self.group)


def _order(model: WeierstrassModel, point: CurvePoint, limit: int) -> int:
    order = model.order(point, limit)
    if order is None:
        raise LatticeError(f"{point} is not torsion of order at most {limit}")
    return order


def _span(model: WeierstrassModel, generators: Sequence[CurvePoint]) -> set[CurvePoint]:
    span: set[CurvePoint] = {model.infinity}
    for generator in generators:
        new = set(span)
        current = generator
        while not current.is_infinity:
            new |= {p + current for p in span}
            current = current + generator
        span = new
    return span


def _structure(
    model: WeierstrassModel, points: set[CurvePoint], exponent: int
) -> tuple[FiniteAbelianGroup, tuple[CurvePoint, ...]]:
    ordered = sorted(points, key=str)
    orders = {p: _order(model, p, exponent) for p in ordered}
    first = max(ordered, key=lambda p: orders[p])
    if orders[first] == len(points):
        generators: tuple[CurvePoint, ...] = (first,) if orders[first] > 1 else ()
        return FiniteAbelianGroup((orders[first],)), generators
    second_order = len(points) // orders[first]
    for candidate in ordered:
        if orders[candidate] != second_order:
            continue
        if len(_span(model, [first, candidate])) == len(points):
            return FiniteAbelianGroup((orders[first], second_order)), (candidate, first)
    raise LatticeError("torsion points do not form a group of rank at most two")


def torsion_subgroup(
    model: WeierstrassModel,
    bound: FiniteAbelianGroup | None = None,
    mode: SquareMode = SquareMode.RATIONAL,
) -> TorsionGroup:
    """2-power torsion from the factored form, halved while the bound allows.

    ``bound`` is the product of the component groups (see
    :func:`~ellsurf.fibers.torsion_injection_bound`); without it only the
    2-torsion is reported.
    """

    roots = _roots(model)
    exponent = 2
    if bound is not None:
        exponent = lcm(1, *bound.orders)
        two_power = 1
        while exponent % (2 * two_power) == 0:
            two_power *= 2
        if exponent != two_power:
            logger.info("odd torsion allowed by %s is not searched", bound)
        exponent = max(two_power, 2)
    points: set[CurvePoint] = {model.infinity, *(model.point(e, 0) for e in roots)}
    frontier = [p for p in points if not p.is_infinity]
    order = 2
    while 2 * order <= exponent and frontier:
        found = []
        for point in frontier:
            for half in halve(point, mode):
                if half not in points:
                    found.append(half)
        points.update(found)
        frontier = found
        order *= 2
    group, generators = _structure(model, points, exponent)
    result = TorsionGroup(group, generators, frozenset(points), bound)
    logger.info("torsion of %s: %s", model.name or "model", group)
    return result


__all__ = [
    "HalvingWitness",
    "TorsionGroup",
    "doubling_witness",
    "halve",
    "torsion_subgroup",
]
