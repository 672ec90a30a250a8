"""Point counts of elliptic surfaces over ``F_p`` fibered over ``P^1``.

``#S(F_{p^n})`` is the sum over the closed points ``x`` of ``P^1`` whose
degree ``d`` divides ``n`` of ``d`` times the number of ``F_{p^n}``-points of
the fiber over ``x``.  Smooth fibers contribute through the trace of
Frobenius over their residue field ``F_{p^d}``, computed once per closed
point and shared by every level that contains it.  Bad places contribute
through their Kodaira configuration.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Protocol

import numpy as np
from sympy import divisors

from ..algebra import UniPoly
from ..algebra.domains import characteristic, is_finite_domain, to_int_mod
from ..curves import WeierstrassModel
from ..fibers import verify_good_reduction
from ..fibers.minimal import MinimalModel, minimal_model
from ..fibers.tate import KodairaFiber, fiber_table
from ..fields import ExtField, FieldTables, build_tables, frobenius_orbits_P1
from .settings import CountingSettings
from .singular import singular_fiber_count
from .traces import FiberCount, FiberCurve, TraceVector, fiber_trace

logger = logging.getLogger(__name__)

INFINITY_KEY = -1
"""Key of the place at infinity in trace maps."""

TraceMap = dict[int, int | None]
"""Orbit representative (encoded in ``F_{p^d}``) to trace; ``None`` marks a bad place."""


class CountingError(ValueError):
    """Raised for surfaces the engine cannot count."""


class TraceStore(Protocol):
    """Persistent trace maps for one reduced surface, keyed by closed-point degree."""

    def load(self, degree: int) -> TraceMap | None: ...

    def save(
        self, degree: int, traces: Mapping[int, int | None], presentation: dict[str, Any]
    ) -> None: ...


def _coefficients(poly: UniPoly) -> list[int]:
    return [to_int_mod(poly.domain, c) for c in poly.coeffs]


def _constant_term(poly: UniPoly) -> int:
    if poly.is_zero:
        return 0
    return to_int_mod(poly.domain, poly.tc)


class SurfaceCounter:
    """Counts ``#S(F_{p^n})`` for the smooth model of a surface over ``F_p``.

    Trace maps per closed-point degree are memoised and, when a ``store``
    is attached, loaded from and written to it.
    """

    def __init__(
        self,
        model: WeierstrassModel | MinimalModel,
        settings: CountingSettings | None = None,
        *,
        store: TraceStore | None = None,
    ) -> None:
        self.minimal = model if isinstance(model, MinimalModel) else minimal_model(model)
        domain = self.minimal.domain
        if not is_finite_domain(domain):
            raise CountingError("point counts need a model over a finite field")
        self.p = characteristic(domain)
        if self.p in (2, 3):
            raise CountingError(f"characteristic {self.p} is not supported")
        self.settings = settings or CountingSettings()
        self.store = store
        self.fibers: list[KodairaFiber] = fiber_table(self.minimal)
        self.a_coeffs = _coefficients(self.minimal.a)
        self.b_coeffs = _coefficients(self.minimal.b)
        a_inf, b_inf = self.minimal.at_infinity()
        self.infinity_curve = (_constant_term(a_inf), _constant_term(b_inf))
        self._levels: dict[int, list[FiberCount]] = {}

    # ------------------------------------------------------------------
    # bad places
    # ------------------------------------------------------------------

    def bad_fibers(self, degree: int) -> list[KodairaFiber]:
        return [f for f in self.fibers if f.degree == degree and not f.place.is_infinity]

    def infinity_fiber(self) -> KodairaFiber | None:
        for fiber in self.fibers:
            if fiber.place.is_infinity:
                return fiber
        return None

    def presentation(self, field: ExtField) -> dict[str, Any]:
        return {
            "p": self.p,
            "degree": field.m,
            "modulus": list(field.modulus),
            "a": list(self.a_coeffs),
            "b": list(self.b_coeffs),
            "infinity": list(self.infinity_curve),
        }

    # ------------------------------------------------------------------
    # traces
    # ------------------------------------------------------------------

    def _field(self, degree: int) -> tuple[ExtField, FieldTables]:
        field = ExtField.build(self.p, degree)
        return field, build_tables(field)

    def evaluate(self, tables: FieldTables, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """``(A(t), B(t))`` for every encoded ``t`` in ``values``."""

        return tables.evaluate(self.a_coeffs, values), tables.evaluate(self.b_coeffs, values)

    def discriminants(self, tables: FieldTables, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        cubes = tables.mul(4 % p, tables.power(a, 3))
        squares = tables.mul(27 % p, tables.power(b, 2))
        return tables.add(cubes, squares)

    def _traces(self, field: ExtField, pairs: Sequence[tuple[int, int, int]]) -> list[int]:
        def work(chunk: Sequence[tuple[int, int, int]]) -> list[int]:
            return [
                fiber_trace(FiberCurve.short(field, a, b), self.settings, salt=salt)
                for salt, a, b in chunk
            ]

        size = self.settings.chunk_size
        chunks = [pairs[i : i + size] for i in range(0, len(pairs), size)]
        if self.settings.threads == 1 or len(chunks) <= 1:
            results = [work(chunk) for chunk in chunks]
        else:
            with ThreadPoolExecutor(max_workers=self.settings.threads) as pool:
                results = list(pool.map(work, chunks))
        return [trace for chunk in results for trace in chunk]

    def trace_map(self, degree: int) -> TraceMap:
        """Traces of the smooth fibers over the closed points of exact ``degree``."""

        if self.store is not None:
            stored = self.store.load(degree)
            if stored is not None:
                return stored
        field, tables = self._field(degree)
        representatives = frobenius_orbits_P1(field, tables).exact(degree)
        a, b = self.evaluate(tables, representatives)
        bad = self.discriminants(tables, a, b) == 0
        expected = len(self.bad_fibers(degree))
        if int(bad.sum()) != expected:
            raise CountingError(
                f"fiber configuration inconsistent ({int(bad.sum())} singular points of degree "
                f"{degree}, {expected} bad places)"
            )
        good = [
            (int(t), int(x), int(y))
            for t, x, y, skip in zip(representatives, a, b, bad, strict=True)
            if not skip
        ]
        strategy = self.settings.strategy_for(field.q)
        logger.info(
            "degree %s: %s closed points, %s smooth, %s traces over %s",
            degree,
            len(representatives),
            len(good),
            strategy.value,
            field,
        )
        traces = self._traces(field, good)
        result: TraceMap = {
            int(t): None for t, skip in zip(representatives, bad, strict=True) if skip
        }
        result.update({t: trace for (t, _, _), trace in zip(good, traces, strict=True)})
        if degree == 1:
            result[INFINITY_KEY] = self._infinity_trace(field)
        if self.store is not None:
            self.store.save(degree, result, self.presentation(field))
        return result

    def _infinity_trace(self, field: ExtField) -> int | None:
        if self.infinity_fiber() is not None:
            return None
        a, b = (field.embed(value) for value in self.infinity_curve)
        return fiber_trace(FiberCurve.short(field, a, b), self.settings, salt=INFINITY_KEY)

    def fiber_counts(self, degree: int) -> list[FiberCount]:
        """Every closed point of exact ``degree``, infinity included for degree one."""

        cached = self._levels.get(degree)
        if cached is not None:
            return cached
        counts = [
            FiberCount(key if key != INFINITY_KEY else None, degree, trace)
            for key, trace in sorted(self.trace_map(degree).items())
            if trace is not None
        ]
        counts.extend(
            FiberCount(None, degree, None, fiber) for fiber in self.bad_fibers(degree)
        )
        if degree == 1:
            infinity = self.infinity_fiber()
            if infinity is not None:
                counts.append(FiberCount(None, 1, None, infinity))
        self._levels[degree] = counts
        return counts

    # ------------------------------------------------------------------
    # totals
    # ------------------------------------------------------------------

    def count(self, n: int) -> int:
        """``#S(F_{p^n})``."""

        if n < 1:
            raise CountingError("levels start at one")
        if not self.settings.orbit_reduction:
            return self.direct_count(n)
        total = 0
        for degree in divisors(n):
            for item in self.fiber_counts(int(degree)):
                total += int(degree) * item.count(self.p, n)
        return total

    def direct_count(self, n: int) -> int:
        """``#S(F_{p^n})`` fiber by fiber over every point of ``P^1(F_{p^n})``."""

        field, tables = self._field(n)
        q = field.q
        points = tables.elements()
        a, b = self.evaluate(tables, points)
        bad = self.discriminants(tables, a, b) == 0
        total = 0
        for t, x, y, skip in zip(points, a, b, bad, strict=True):
            if skip:
                continue
            curve = FiberCurve.short(field, int(x), int(y))
            total += q + 1 - fiber_trace(curve, self.settings, salt=int(t))
        bad_points = points[bad]
        for fiber in self.fibers:
            if fiber.place.is_infinity:
                continue
            assert fiber.place.poly is not None
            if n % fiber.degree:
                continue
            roots = tables.evaluate(_coefficients(fiber.place.poly), bad_points) == 0
            total += int(roots.sum()) * singular_fiber_count(fiber, q)
        infinity = self.infinity_fiber()
        if infinity is not None:
            total += singular_fiber_count(infinity, q)
        else:
            a_inf, b_inf = (field.embed(value) for value in self.infinity_curve)
            curve = FiberCurve.short(field, a_inf, b_inf)
            total += q + 1 - fiber_trace(curve, self.settings, salt=INFINITY_KEY)
        return total

    def surface_count(self, depth: int, base_power: int = 1) -> TraceVector:
        """``#S(F_{q^m})`` for ``m = 1..depth`` with ``q = p**base_power``."""

        if depth < 1 or base_power < 1:
            raise CountingError("depth and base power must be positive")
        counts = tuple(self.count(base_power * m) for m in range(1, depth + 1))
        return TraceVector(self.p, base_power, counts)


def surface_count(
    model: WeierstrassModel | MinimalModel,
    depth: int,
    settings: CountingSettings | None = None,
    *,
    base_power: int = 1,
    store: TraceStore | None = None,
    lift: WeierstrassModel | None = None,
    acknowledge_bad_reduction: bool = False,
) -> TraceVector:
    """Point counts of the reduced surface up to ``depth``.

    With ``lift`` (the model in characteristic zero) good reduction is
    verified first; a failure is fatal unless acknowledged.
    """

    counter = SurfaceCounter(model, settings, store=store)
    if lift is not None and not acknowledge_bad_reduction:
        report = verify_good_reduction(lift, counter.p)
        if not report:
            raise CountingError(
                f"reduction at {counter.p} is not good: {'; '.join(report.mismatches)}"
            )
    return counter.surface_count(depth, base_power)


__all__ = [
    "CountingError",
    "INFINITY_KEY",
    "SurfaceCounter",
    "TraceMap",
    "TraceStore",
    "surface_count",
]
