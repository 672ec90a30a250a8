"""Traces of Frobenius on smooth fibers and their extension to larger fields.

A smooth fiber ``y^2 = x^3 + a2 x^2 + a4 x + a6`` over ``F_Q`` has
``Q + 1 - a`` points.  The trace ``a`` comes from the character sum
``-sum_x chi(f(x))`` or, for large ``Q``, from a baby-step giant-step
search for the group order inside the Hasse window.  Over ``F_{Q^k}`` the
count is ``Q^k + 1 - s_k`` with ``s_0 = 2``, ``s_1 = a`` and
``s_k = a s_{k-1} - Q s_{k-2}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from ..fibers.tate import KodairaFiber
from ..fields import ExtField, FieldTables, build_tables
from .settings import CountingSettings, Strategy

logger = logging.getLogger(__name__)

CurvePoint = tuple[int, int] | None
"""Affine point as encoded coordinates, ``None`` for the origin."""


class FiberCountError(ValueError):
    """Raised for singular fibers, bad degrees and violated trace bounds."""


# ---------------------------------------------------------------------------
# Scalar arithmetic
# ---------------------------------------------------------------------------


class _Scalars:
    """Scalar field operations, through log tables when they exist."""

    def __init__(self, field: ExtField, tables: FieldTables | None) -> None:
        self.field = field
        self.tables = tables
        self.q = field.q
        self.prime = field.is_prime_field

    def add(self, a: int, b: int) -> int:
        return self.field.add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.field.sub(a, b)

    def neg(self, a: int) -> int:
        return self.field.neg(a)

    def mul(self, a: int, b: int) -> int:
        if self.prime or self.tables is None:
            return self.field.mul(a, b)
        if a == 0 or b == 0:
            return 0
        tables = self.tables
        return int(tables.exp[(int(tables.log[a]) + int(tables.log[b])) % tables.order])

    def inv(self, a: int) -> int:
        if self.prime:
            return pow(a, -1, self.q)
        if self.tables is None:
            return self.field.inv(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        tables = self.tables
        return int(tables.exp[(-int(tables.log[a])) % tables.order])

    def character(self, a: int) -> int:
        if self.tables is not None:
            return int(self.tables.chi[a])
        return self.field.character(a)

    def sqrt(self, a: int) -> int | None:
        if self.tables is not None:
            return self.tables.sqrt(a)
        return self.field.sqrt(a)

    def embed(self, value: int) -> int:
        return self.field.embed(value)


# ---------------------------------------------------------------------------
# Fibers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FiberCurve:
    """``y^2 = x^3 + a2 x^2 + a4 x + a6`` over ``field`` with encoded coefficients."""

    field: ExtField
    a2: int
    a4: int
    a6: int

    @classmethod
    def short(cls, field: ExtField, a: int, b: int) -> FiberCurve:
        return cls(field, 0, a, b)

    def scalars(self, settings: CountingSettings | None = None) -> _Scalars:
        settings = settings or CountingSettings()
        tables = build_tables(self.field) if settings.uses_tables(self.field.q) else None
        return _Scalars(self.field, tables)

    def cubic_discriminant(self) -> int:
        """``18 bcd - 4 b^3 d + b^2 c^2 - 4 c^3 - 27 d^2`` of the monic cubic."""

        f = self.field
        b, c, d = self.a2, self.a4, self.a6

        def scaled(k: int, value: int) -> int:
            return f.mul(f.embed(k), value)

        terms = [
            scaled(18, f.mul(f.mul(b, c), d)),
            scaled(-4, f.mul(f.pow(b, 3), d)),
            f.mul(f.pow(b, 2), f.pow(c, 2)),
            scaled(-4, f.pow(c, 3)),
            scaled(-27, f.pow(d, 2)),
        ]
        total = 0
        for term in terms:
            total = f.add(total, term)
        return total

    @property
    def is_singular(self) -> bool:
        return self.cubic_discriminant() == 0

    def rhs(self, scalars: _Scalars, x: int) -> int:
        value = scalars.add(x, self.a2)
        value = scalars.add(scalars.mul(value, x), self.a4)
        return scalars.add(scalars.mul(value, x), self.a6)

    # group law -------------------------------------------------------

    def add(self, scalars: _Scalars, first: CurvePoint, second: CurvePoint) -> CurvePoint:
        if first is None:
            return second
        if second is None:
            return first
        x1, y1 = first
        x2, y2 = second
        if x1 == x2:
            if scalars.add(y1, y2) == 0:
                return None
            return self.double(scalars, first)
        slope = scalars.mul(scalars.sub(y2, y1), scalars.inv(scalars.sub(x2, x1)))
        return self._third(scalars, slope, x1, y1, x2)

    def double(self, scalars: _Scalars, point: CurvePoint) -> CurvePoint:
        if point is None:
            return None
        x, y = point
        if y == 0:
            return None
        numerator = scalars.mul(scalars.embed(3), scalars.mul(x, x))
        numerator = scalars.add(numerator, scalars.mul(scalars.embed(2), scalars.mul(self.a2, x)))
        numerator = scalars.add(numerator, self.a4)
        slope = scalars.mul(numerator, scalars.inv(scalars.mul(scalars.embed(2), y)))
        return self._third(scalars, slope, x, y, x)

    def _third(self, scalars: _Scalars, slope: int, x1: int, y1: int, x2: int) -> CurvePoint:
        x3 = scalars.sub(scalars.sub(scalars.sub(scalars.mul(slope, slope), self.a2), x1), x2)
        y3 = scalars.sub(scalars.mul(slope, scalars.sub(x1, x3)), y1)
        return (x3, y3)

    def negate(self, scalars: _Scalars, point: CurvePoint) -> CurvePoint:
        if point is None:
            return None
        return (point[0], scalars.neg(point[1]))

    def multiply(self, scalars: _Scalars, k: int, point: CurvePoint) -> CurvePoint:
        if k < 0:
            return self.multiply(scalars, -k, self.negate(scalars, point))
        result: CurvePoint = None
        addend = point
        while k:
            if k & 1:
                result = self.add(scalars, result, addend)
            addend = self.double(scalars, addend)
            k >>= 1
        return result

    def contains(self, scalars: _Scalars, point: CurvePoint) -> bool:
        if point is None:
            return True
        x, y = point
        return scalars.mul(y, y) == self.rhs(scalars, x)


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------


def character_sum_trace(curve: FiberCurve, settings: CountingSettings | None = None) -> int:
    """``-sum_x chi(x^3 + a2 x^2 + a4 x + a6)`` over every ``x`` of the field."""

    settings = settings or CountingSettings()
    field = curve.field
    if settings.uses_tables(field.q):
        tables = build_tables(field)
        x = tables.elements()
        values = tables.add(x, curve.a2)
        values = tables.add(tables.mul(values, x), curve.a4)
        values = tables.add(tables.mul(values, x), curve.a6)
        return -int(tables.character(values).astype(np.int64).sum())
    scalars = _Scalars(field, None)
    return -sum(field.character(curve.rhs(scalars, x)) for x in range(field.q))


def _random_point(
    curve: FiberCurve, scalars: _Scalars, rng: np.random.Generator
) -> CurvePoint:
    for _ in range(64):
        x = int(rng.integers(0, scalars.q))
        value = curve.rhs(scalars, x)
        if value == 0:
            continue
        root = scalars.sqrt(value)
        if root is not None:
            return (x, root)
    return None


def _order_candidates(
    curve: FiberCurve, scalars: _Scalars, point: CurvePoint, low: int, width: int
) -> set[int] | None:
    """All ``N`` in ``[low, low + width]`` with ``N P = 0``; ``None`` when ``P`` is too small."""

    step = isqrt(width) + 1
    baby: dict[CurvePoint, int] = {}
    current: CurvePoint = None
    for j in range(step):
        if j and current is None:
            return None
        baby.setdefault(current, j)
        current = curve.add(scalars, current, point)
    giant = curve.multiply(scalars, step, point)
    minus_giant = curve.negate(scalars, giant)
    target = curve.negate(scalars, curve.multiply(scalars, low, point))
    found: set[int] = set()
    for i in range(width // step + 1):
        j = baby.get(target)
        if j is not None and i * step + j <= width:
            found.add(low + i * step + j)
        target = curve.add(scalars, target, minus_giant)
    return found


def bsgs_trace(
    curve: FiberCurve, settings: CountingSettings | None = None, *, salt: int = 0
) -> int:
    """Trace from the group order, found by baby-step giant-step in the Hasse window.

    Random points are drawn from a generator seeded with ``settings.seed``
    and ``salt``.  When no point pins the order down the character sum
    decides.
    """

    settings = settings or CountingSettings()
    scalars = curve.scalars(settings)
    q = curve.field.q
    bound = isqrt(4 * q)
    low, width = q + 1 - bound, 2 * bound
    rng = np.random.default_rng([settings.seed, salt])
    possible: set[int] | None = None
    for _ in range(settings.bsgs_attempts):
        point = _random_point(curve, scalars, rng)
        if point is None:
            continue
        found = _order_candidates(curve, scalars, point, low, width)
        if not found:
            continue
        possible = found if possible is None else possible & found
        if len(possible) == 1:
            return q + 1 - possible.pop()
    logger.debug("bsgs inconclusive over %s; falling back to a character sum", curve.field)
    return character_sum_trace(curve, settings)


def fiber_trace(
    curve: FiberCurve, settings: CountingSettings | None = None, *, salt: int = 0
) -> int:
    """Trace of Frobenius of a smooth fiber by the configured strategy."""

    settings = settings or CountingSettings()
    if curve.is_singular:
        raise FiberCountError("use singular_fiber_count")
    if settings.strategy_for(curve.field.q) is Strategy.BSGS:
        trace = bsgs_trace(curve, settings, salt=salt)
    else:
        trace = character_sum_trace(curve, settings)
    if settings.check_hasse:
        check_hasse(trace, curve.field.q)
    return trace


def check_hasse(trace: int, field_size: int) -> None:
    if trace * trace > 4 * field_size:
        raise FiberCountError(f"trace {trace} violates the Hasse bound over F_{field_size}")


# ---------------------------------------------------------------------------
# Extension to larger fields
# ---------------------------------------------------------------------------


def power_sums(trace: int, field_size: int, depth: int) -> list[int]:
    """``[s_0, ..., s_depth]`` for the Frobenius roots of a fiber with trace ``trace``."""

    sums = [2, trace]
    for _ in range(2, depth + 1):
        sums.append(trace * sums[-1] - field_size * sums[-2])
    return sums[: depth + 1]


def extend_count(trace: int, field_size: int, k: int) -> int:
    """Points over ``F_{Q^k}`` of a smooth fiber over ``F_Q`` with the given trace."""

    if k < 1:
        raise FiberCountError("extension degrees start at one")
    return field_size**k + 1 - power_sums(trace, field_size, k)[k]


def good_fiber_count(
    curve: FiberCurve, m: int, settings: CountingSettings | None = None, *, salt: int = 0
) -> int:
    """``#E(F_{p^m})`` for a smooth fiber over ``F_{p^d}``; ``d`` must divide ``m``."""

    d = curve.field.m
    if m % d:
        raise FiberCountError(f"degree {m} is not a multiple of the fiber degree {d}")
    return extend_count(fiber_trace(curve, settings, salt=salt), curve.field.q, m // d)


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FiberCount:
    """One closed point of ``P^1`` over ``F_p``: a trace for a smooth fiber, else its fiber."""

    representative: int | None
    degree: int
    trace: int | None = None
    fiber: KodairaFiber | None = field(default=None, compare=False)

    @property
    def is_good(self) -> bool:
        return self.fiber is None

    def count(self, p: int, n: int) -> int:
        """Points of the fiber over ``F_{p^n}``; ``degree`` must divide ``n``."""

        from .singular import singular_fiber_count  # noqa: PLC0415

        if n % self.degree:
            raise FiberCountError(f"degree {n} is not a multiple of {self.degree}")
        if self.fiber is not None:
            return singular_fiber_count(self.fiber, p**n)
        assert self.trace is not None
        return extend_count(self.trace, p**self.degree, n // self.degree)


@dataclass(frozen=True, slots=True)
class TraceVector:
    """``#S(F_{q^m})`` for ``m = 1..depth`` with ``q = p**base_power``."""

    p: int
    base_power: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        for m, count in enumerate(self.counts, start=1):
            if count < self.q**m + 1:
                raise FiberCountError(f"count {count} at level {m} is below the number of fibers")

    @property
    def q(self) -> int:
        return self.p**self.base_power

    @property
    def depth(self) -> int:
        return len(self.counts)

    def count(self, m: int) -> int:
        return self.counts[m - 1]

    def traces(self) -> list[int]:
        """``#S(F_{q^m}) - 1 - q^{2m}``, the trace on the middle cohomology."""

        return [count - 1 - self.q ** (2 * m) for m, count in enumerate(self.counts, start=1)]


__all__ = [
    "CurvePoint",
    "FiberCount",
    "FiberCountError",
    "FiberCurve",
    "TraceVector",
    "bsgs_trace",
    "character_sum_trace",
    "check_hasse",
    "extend_count",
    "fiber_trace",
    "good_fiber_count",
    "power_sums",
]
