"""Weierstrass models and the chord-tangent group law.

Coefficients are duck-typed field values: :class:`~fractions.Fraction` over
``Q``, :class:`~ellsurf.algebra.NumberFieldElement` over a number field,
:class:`~ellsurf.fields.FFElement` over ``F_q`` and
:class:`~ellsurf.algebra.RationalFunction` over ``K(t)`` or ``F_q(t)``.  All
of them support ``+ - * / **``, equality and truthiness, which is everything
the group law needs.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..algebra import NumberField, RationalFunction, galois_conjugate

logger = logging.getLogger(__name__)

FieldValue = Any
"""A value in the base field of a model."""


class CurveError(ValueError):
    """Raised for invalid Weierstrass data."""


class SingularModelError(CurveError):
    """Raised when a model that must be smooth has vanishing discriminant."""


class PointError(ValueError):
    """Raised for points off the curve or points of different curves."""


def _common_zero(values: Iterable[FieldValue]) -> FieldValue:
    """Zero of the richest type among ``values``; plain numbers give ``Fraction(0)``."""

    typed = []
    for value in values:
        if isinstance(value, bool):
            raise CurveError("booleans are not field values")
        if not isinstance(value, (int, Fraction)):
            typed.append(value)
    return typed[0] * 0 if typed else Fraction(0)


@dataclass(frozen=True, slots=True)
class Invariants:
    """``(discriminant, j, c4, c6)``; ``j`` is ``None`` when the discriminant vanishes."""

    discriminant: FieldValue
    j: FieldValue | None
    c4: FieldValue
    c6: FieldValue


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class WeierstrassModel:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``.

    ``roots`` records ``e1, e2, e3`` when the model was built in the factored
    form ``y^2 = (x - e1)(x - e2)(x - e3)``.  ``singular`` tags a model whose
    discriminant may vanish, such as a fiber under analysis.
    """

    a1: FieldValue
    a2: FieldValue
    a3: FieldValue
    a4: FieldValue
    a6: FieldValue
    roots: tuple[FieldValue, FieldValue, FieldValue] | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)
    number_field: NumberField | None = field(default=None, compare=False, repr=False)
    singular: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        names = ("a1", "a2", "a3", "a4", "a6")
        values = [getattr(self, attribute) for attribute in names]
        # One common type for every coefficient.
        zero = _common_zero(values)
        for attribute, value in zip(names, values, strict=True):
            object.__setattr__(self, attribute, value + zero)
        if self.roots is not None:
            object.__setattr__(self, "roots", tuple(e + zero for e in self.roots))
        if not self.singular and not self.discriminant:
            raise SingularModelError(f"discriminant of {self} vanishes")

    # constructors ------------------------------------------------------

    @classmethod
    def from_roots(
        cls,
        e1: FieldValue,
        e2: FieldValue,
        e3: FieldValue,
        *,
        name: str = "",
        number_field: NumberField | None = None,
        singular: bool = False,
    ) -> WeierstrassModel:
        """``y^2 = (x - e1)(x - e2)(x - e3)``."""

        zero = _common_zero((e1, e2, e3))
        e1, e2, e3 = e1 + zero, e2 + zero, e3 + zero
        return cls(
            zero,
            zero - (e1 + e2 + e3),
            zero,
            e1 * e2 + e1 * e3 + e2 * e3,
            zero - e1 * e2 * e3,
            roots=(e1, e2, e3),
            name=name,
            number_field=number_field,
            singular=singular,
        )

    @classmethod
    def factored(cls, r: FieldValue, s: FieldValue, **options: Any) -> WeierstrassModel:
        """``y^2 = x (x - r)(x - s)``."""

        return cls.from_roots(0, r, s, **options)

    @classmethod
    def short(cls, a: FieldValue, b: FieldValue, **options: Any) -> WeierstrassModel:
        """``y^2 = x^3 + a x + b``."""

        zero = _common_zero((a, b))
        return cls(zero, zero, zero, a + zero, b + zero, **options)

    # invariants --------------------------------------------------------

    @property
    def coefficients(self) -> tuple[FieldValue, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def zero(self) -> FieldValue:
        return self.a4 * 0

    @property
    def one(self) -> FieldValue:
        return self.a4 * 0 + 1

    @property
    def b2(self) -> FieldValue:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> FieldValue:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> FieldValue:
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self) -> FieldValue:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @property
    def c4(self) -> FieldValue:
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self) -> FieldValue:
        b2 = self.b2
        return -(b2**3) + 36 * b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> FieldValue:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> FieldValue | None:
        delta = self.discriminant
        if not delta:
            return None
        return self.c4**3 / delta

    def invariants(self) -> Invariants:
        return Invariants(self.discriminant, self.j_invariant, self.c4, self.c6)

    @property
    def is_function_field(self) -> bool:
        return isinstance(self.a4, RationalFunction)

    @property
    def is_factored(self) -> bool:
        return self.roots is not None

    def short_coefficients(self) -> tuple[FieldValue, FieldValue]:
        """``(A, B)`` of the model ``Y^2 = X^3 + A X + B`` with ``X = 36x + 3b2``."""

        return -27 * self.c4, -54 * self.c6

    def to_short(self, point: CurvePoint) -> CurvePoint:
        """Image on :meth:`short_model` under ``X = 36x + 3b2``, ``Y = 108(2y + a1 x + a3)``."""

        target = self.short_model()
        if isinstance(point, PointAtInfinity):
            return target.infinity
        x = 36 * point.x + 3 * self.b2
        y = 108 * (2 * point.y + self.a1 * point.x + self.a3)
        return target.point(x, y)

    def short_model(self) -> WeierstrassModel:
        a, b = self.short_coefficients()
        return WeierstrassModel.short(
            a, b, name=self.name, number_field=self.number_field, singular=self.singular
        )

    def completed(self) -> WeierstrassModel:
        """The model ``y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4`` with ``a1 = a3 = 0``."""

        if not self.a1 and not self.a3:
            return self
        zero = self.zero
        return WeierstrassModel(
            zero,
            self.b2 / 4,
            zero,
            self.b4 / 2,
            self.b6 / 4,
            name=self.name,
            number_field=self.number_field,
            singular=self.singular,
        )

    # coefficient maps --------------------------------------------------

    def map_coefficients(
        self,
        function: Callable[[FieldValue], FieldValue],
        *,
        name: str | None = None,
        number_field: NumberField | None = None,
        singular: bool | None = None,
    ) -> WeierstrassModel:
        roots = None if self.roots is None else tuple(function(e) for e in self.roots)
        return WeierstrassModel(
            *(function(a) for a in self.coefficients),
            roots=roots,  # type: ignore[arg-type]
            name=self.name if name is None else name,
            number_field=self.number_field if number_field is None else number_field,
            singular=self.singular if singular is None else singular,
        )

    def conjugate(self, sigma: Any) -> WeierstrassModel:
        return self.map_coefficients(lambda value: galois_conjugate(value, sigma))

    # points ------------------------------------------------------------

    @property
    def infinity(self) -> PointAtInfinity:
        return PointAtInfinity(self)

    def lift(self, value: object) -> FieldValue:
        """Coerce ints and fractions into the base field of the model."""

        return self.zero + value

    def contains(self, x: FieldValue, y: FieldValue) -> bool:
        lhs = y**2 + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x**2 + self.a4 * x + self.a6
        return lhs == rhs

    def point(self, x: object, y: object) -> AffinePoint:
        return AffinePoint(self, self.lift(x), self.lift(y))

    def two_torsion(self) -> list[AffinePoint]:
        """The points ``(e_i, 0)`` of a factored model."""

        if self.roots is None:
            raise CurveError("two-torsion points need the factored form")
        return [self.point(e, 0) for e in self.roots]

    def _check(self, point: CurvePoint) -> None:
        if point.curve != self:
            raise PointError("points on different curves")

    def negate(self, point: CurvePoint) -> CurvePoint:
        self._check(point)
        if isinstance(point, PointAtInfinity):
            return point
        return AffinePoint(self, point.x, -point.y - self.a1 * point.x - self.a3)

    def add(self, first: CurvePoint, second: CurvePoint) -> CurvePoint:
        self._check(first)
        self._check(second)
        if isinstance(first, PointAtInfinity):
            return second
        if isinstance(second, PointAtInfinity):
            return first
        a1, a2, a3, a4, _ = self.coefficients
        x1, y1, x2, y2 = first.x, first.y, second.x, second.y
        if x1 == x2:
            if not (y1 + y2 + a1 * x2 + a3):
                return self.infinity
            slope = (3 * x1**2 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            slope = (y2 - y1) / (x2 - x1)
        intercept = y1 - slope * x1
        x3 = slope**2 + a1 * slope - a2 - x1 - x2
        y3 = -(slope + a1) * x3 - intercept - a3
        return AffinePoint(self, x3, y3)

    def multiply(self, n: int, point: CurvePoint) -> CurvePoint:
        """``n * point`` by double-and-add."""

        self._check(point)
        if n < 0:
            return self.multiply(-n, self.negate(point))
        result: CurvePoint = self.infinity
        addend = point
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    def order(self, point: CurvePoint, limit: int = 16) -> int | None:
        """Smallest ``k <= limit`` with ``k * point = O``, else ``None``."""

        current = point
        for k in range(1, limit + 1):
            if isinstance(current, PointAtInfinity):
                return k
            current = self.add(current, point)
        return None

    def __str__(self) -> str:
        lhs = "y^2"
        if self.a1:
            lhs += f" + ({self.a1})*x*y"
        if self.a3:
            lhs += f" + ({self.a3})*y"
        if self.roots is not None:
            rhs = " * ".join(f"(x - ({e}))" if e else "x" for e in self.roots)
        else:
            terms = ["x^3"]
            for coefficient, monomial in ((self.a2, "*x^2"), (self.a4, "*x"), (self.a6, "")):
                if coefficient:
                    terms.append(f"({coefficient}){monomial}")
            rhs = " + ".join(terms)
        return f"{lhs} = {rhs}"


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


class _PointArithmetic:
    __slots__ = ()

    curve: WeierstrassModel

    def __add__(self, other: CurvePoint) -> CurvePoint:
        return self.curve.add(self, other)  # type: ignore[arg-type]

    def __neg__(self) -> CurvePoint:
        return self.curve.negate(self)  # type: ignore[arg-type]

    def __sub__(self, other: CurvePoint) -> CurvePoint:
        return self.curve.add(self, self.curve.negate(other))  # type: ignore[arg-type]

    def __rmul__(self, n: int) -> CurvePoint:
        return self.curve.multiply(n, self)  # type: ignore[arg-type]

    def map(self, function: Callable[[FieldValue], FieldValue], curve: WeierstrassModel) -> Any:
        """Image on ``curve`` after applying ``function`` to the coordinates."""

        if isinstance(self, AffinePoint):
            return AffinePoint(curve, function(self.x), function(self.y))
        return curve.infinity


@dataclass(frozen=True, slots=True)
class PointAtInfinity(_PointArithmetic):
    """The neutral element ``O``."""

    curve: WeierstrassModel

    @property
    def is_infinity(self) -> bool:
        return True

    def __str__(self) -> str:
        return "O"


@dataclass(frozen=True, slots=True)
class AffinePoint(_PointArithmetic):
    curve: WeierstrassModel
    x: FieldValue
    y: FieldValue

    def __post_init__(self) -> None:
        if not self.curve.contains(self.x, self.y):
            raise PointError(f"({self.x}, {self.y}) is not on {self.curve}")

    @property
    def is_infinity(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


CurvePoint = AffinePoint | PointAtInfinity


__all__ = [
    "AffinePoint",
    "CurveError",
    "CurvePoint",
    "FieldValue",
    "Invariants",
    "PointAtInfinity",
    "PointError",
    "SingularModelError",
    "WeierstrassModel",
]
