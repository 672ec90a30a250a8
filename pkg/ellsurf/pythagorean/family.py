"""The subfamily ``S`` and its two explicit points.

For integers ``p, q`` put ``u = 2pq / (p^2 + 5q^2) = P/Q`` in lowest terms
and ``k = gcd(2pq, p^2 + 5q^2)``.  The triple
``(P^2 - Q^2, 2PQ, P^2 + Q^2)`` carries the points

* ``Q1 = ((a + b - c)^2 / 2, (a + b)(a + b - c)^2 / 2)``
* ``Q2 = (a (a - c) / 2, ab (p^4 - 25 q^4) / (2 k^2))``

on ``y^2 = x (x - a^2)(x - b^2)``; they are the sections ``P2`` and ``P3``
of the elliptic surfaces over ``Q(t)`` specialized at ``t = p/q`` and
scaled onto the triple.

Torsion over ``Q`` is decided exactly: a torsion point of an integral
model has integral coordinates, and its order divides ``#E(F_p)`` for every
odd prime ``p`` of good reduction.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import nextprime

from ..counting.traces import FiberCurve, character_sum_trace
from ..curves import AffinePoint, CurvePoint, WeierstrassModel
from ..curves.specialize import scale_to_triple, specialize, triple_model
from ..fields import ExtField
from .triples import PythagoreanError, Triple

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SMembership:
    p: int
    q: int
    u: Fraction
    k: int
    triple: Triple

    @property
    def big_p(self) -> int:
        return self.u.numerator

    @property
    def big_q(self) -> int:
        return self.u.denominator

    def __str__(self) -> str:
        return f"(p, q) = ({self.p}, {self.q}): u = {self.u}, k = {self.k}, {self.triple}"


def s_membership(p: int, q: int) -> SMembership:
    """The triple of ``S`` attached to ``(p, q)``; ``ab != 0`` is certified."""

    if p == 0 or q == 0:
        raise PythagoreanError(f"degenerate witness ({p}, {q}): p = 0 or q = 0 forces b = 0")
    numerator, denominator = 2 * p * q, p * p + 5 * q * q
    k = gcd(numerator, denominator)
    u = Fraction(numerator, denominator)
    big_p, big_q = u.numerator, u.denominator
    triple = Triple(big_p * big_p - big_q * big_q, 2 * big_p * big_q, big_p * big_p + big_q * big_q)
    triple.require_family()
    return SMembership(p, q, u, k, triple)


# ---------------------------------------------------------------------------
# Torsion over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TorsionTest:
    """Outcome of the exact torsion test; ``method`` names the deciding argument."""

    point: CurvePoint
    torsion: bool
    method: str
    primes: tuple[int, ...] = ()
    bound: int | None = None


def _residue(value: Fraction, p: int) -> int:
    return value.numerator * pow(value.denominator, -1, p) % p


def _is_good(model: WeierstrassModel, p: int) -> bool:
    values = [Fraction(model.discriminant), *(Fraction(a) for a in model.coefficients)]
    if any(v.denominator % p == 0 for v in values):
        return False
    return Fraction(model.discriminant).numerator % p != 0


def good_primes(model: WeierstrassModel, count: int = 2, start: int = 2) -> tuple[int, ...]:
    """The first ``count`` odd primes of good reduction above ``start``."""

    primes: list[int] = []
    p = max(start, 2)
    while len(primes) < count:
        p = int(nextprime(p))
        if _is_good(model, p):
            primes.append(p)
    return tuple(primes)


def reduction_order(model: WeierstrassModel, p: int) -> int:
    """``#E(F_p)`` by a character sum over the reduced cubic."""

    if model.a1 or model.a3:
        raise PythagoreanError("reduction counts expect a model without a1, a3")
    field = ExtField.build(p)
    a2, a4, a6 = (field.embed(_residue(Fraction(a), p)) for a in (model.a2, model.a4, model.a6))
    trace = character_sum_trace(FiberCurve(field, a2, a4, a6))
    return p + 1 - trace


def torsion_test(point: CurvePoint, primes: Iterable[int] | None = None) -> TorsionTest:
    if point.is_infinity:
        return TorsionTest(point, True, "zero")
    assert isinstance(point, AffinePoint)
    model = point.curve
    integral = all(Fraction(a).denominator == 1 for a in model.coefficients)
    x, y = Fraction(point.x), Fraction(point.y)
    if integral and (x.denominator != 1 or y.denominator != 1):
        return TorsionTest(point, False, "nagell-lutz")
    chosen = tuple(primes) if primes is not None else good_primes(model)
    bound = 0
    for p in chosen:
        bound = gcd(bound, reduction_order(model, p))
    torsion = (bound * point).is_infinity
    logger.debug("torsion test of %s: %s (bound %s)", point, torsion, bound)
    return TorsionTest(point, torsion, "reduction", chosen, bound)


# ---------------------------------------------------------------------------
# Explicit points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ExplicitPoints:
    member: SMembership
    model: WeierstrassModel
    q1: AffinePoint
    q2: AffinePoint
    q1_test: TorsionTest
    q2_test: TorsionTest
    degenerate: bool

    @property
    def independent_candidates(self) -> bool:
        """Both points are non-torsion and ``Q2 != +-Q1`` modulo torsion."""

        return not (self.q1_test.torsion or self.q2_test.torsion or self.degenerate)

    @property
    def rank_lower_bound(self) -> int:
        return 2 if self.independent_candidates else 1


def _is_torsion(point: CurvePoint) -> bool:
    return torsion_test(point).torsion


def explicit_points(member: SMembership) -> ExplicitPoints:
    """``Q1``, ``Q2`` on the curve of ``member``; raises ``PointError`` if either is off it."""

    a, b, c = member.triple.as_tuple()
    model = triple_model(a, b)
    q1 = model.point(Fraction((a + b - c) ** 2, 2), Fraction((a + b) * (a + b - c) ** 2, 2))
    p4 = member.p**4 - 25 * member.q**4
    q2 = model.point(Fraction(a * (a - c), 2), Fraction(a * b * p4, 2 * member.k**2))
    degenerate = _is_torsion(q2 - q1) or _is_torsion(q2 + q1)
    points = ExplicitPoints(
        member, model, q1, q2, torsion_test(q1), torsion_test(q2), degenerate
    )
    logger.info("%s: rank >= %s", member, points.rank_lower_bound)
    return points


def doubled_point(points: ExplicitPoints) -> CurvePoint:
    """``-2 Q1``, which is ``(c^2, abc)``."""

    return -(2 * points.q1)


def lifted_points(
    member: SMembership,
    surface: WeierstrassModel,
    second: WeierstrassModel,
    p2: AffinePoint,
    p3: AffinePoint,
) -> tuple[CurvePoint, CurvePoint]:
    """``Q1, Q2`` as images of ``P2`` on ``E_u`` and ``P3`` on its cover at ``t = p/q``.

    ``surface`` is ``y^2 = x (x - (t^2 - 1)^2)(x - 4t^2)`` and ``second``
    its pullback along ``t -> 2t / (5 + t^2)``.
    """

    triple = member.triple.as_tuple()
    _, (first,) = specialize(surface, member.u, [p2])
    _, (other,) = specialize(second, Fraction(member.p, member.q), [p3])
    return scale_to_triple(first, triple), scale_to_triple(other, triple)


__all__ = [
    "ExplicitPoints",
    "SMembership",
    "TorsionTest",
    "doubled_point",
    "explicit_points",
    "good_primes",
    "lifted_points",
    "reduction_order",
    "s_membership",
    "torsion_test",
]
