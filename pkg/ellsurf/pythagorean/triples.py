"""Pythagorean triples, their equivalence classes and the parameter ``t = b/(c - a)``.

Two triples are equivalent when they differ by a common rational scale,
signs and the swap of ``a`` and ``b``.  On parameters the equivalence is the
action of the dihedral group of order eight generated by ``t -> -t``,
``t -> 1/t`` and ``t -> (1 + t)/(1 - t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class PythagoreanError(ValueError):
    """Raised for triples and parameters outside the family."""


_EXCLUDED_PARAMETERS = frozenset({Fraction(0), Fraction(1), Fraction(-1)})


@dataclass(frozen=True, slots=True)
class Triple:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a * self.a + self.b * self.b != self.c * self.c:
            raise PythagoreanError(f"{self} is not Pythagorean")

    @property
    def in_family(self) -> bool:
        """``ab != 0``: the curve ``y^2 = x (x - a^2)(x - b^2)`` is smooth."""

        return self.a != 0 and self.b != 0

    def require_family(self) -> Triple:
        if not self.in_family:
            raise PythagoreanError(f"{self} has ab = 0 and lies outside the family")
        return self

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True, slots=True)
class TripleClass:
    representative: Triple
    parameter: Fraction

    @property
    def orbit(self) -> frozenset[Fraction]:
        return parameter_orbit(self.parameter)

    def __str__(self) -> str:
        return f"{self.representative} [t = {self.parameter}]"


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def canonicalize(triple: Triple) -> TripleClass:
    """Primitive representative with ``a`` odd, ``b`` even and every entry positive."""

    triple.require_family()
    g = gcd(triple.a, triple.b, triple.c)
    a, b, c = (abs(v) // g for v in triple.as_tuple())
    if b % 2:
        a, b = b, a
    representative = Triple(a, b, c)
    return TripleClass(representative, parameter_of(representative))


def equivalent(first: Triple, second: Triple) -> bool:
    return canonicalize(first) == canonicalize(second)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def parameter_of(triple: Triple) -> Fraction:
    """``t = b / (c - a)``."""

    if triple.a == triple.c:
        raise PythagoreanError("a triple with a = c cannot lie in the family")
    return Fraction(triple.b, triple.c - triple.a)


def _check_parameter(t: Fraction) -> Fraction:
    t = Fraction(t)
    if t in _EXCLUDED_PARAMETERS:
        raise PythagoreanError(f"parameter {t} is excluded (t must avoid 0 and +-1)")
    return t


def triple_from_parameter(t: Fraction | int) -> Triple:
    """``p/q -> (p^2 - q^2, 2pq, p^2 + q^2)`` with ``p/q`` in lowest terms."""

    t = _check_parameter(Fraction(t))
    p, q = t.numerator, t.denominator
    return Triple(p * p - q * q, 2 * p * q, p * p + q * q)


def param_roundtrip(value: Triple | Fraction | int) -> Fraction | Triple:
    """The parameter of a triple, or the triple of a parameter."""

    if isinstance(value, Triple):
        return parameter_of(value.require_family())
    return triple_from_parameter(value)


def legendre_lambda(t: Fraction | int) -> Fraction:
    """``(2t / (t^2 - 1))^2``, the Legendre parameter of ``E_t``."""

    t = _check_parameter(Fraction(t))
    return (2 * t / (t * t - 1)) ** 2


def side_ratios(t: Fraction | int) -> tuple[Fraction, Fraction]:
    """``(a/c, b/c) = ((t^2 - 1)/(t^2 + 1), 2t/(t^2 + 1))``."""

    t = _check_parameter(Fraction(t))
    return (t * t - 1) / (t * t + 1), 2 * t / (t * t + 1)


def parameter_orbit(t: Fraction | int) -> frozenset[Fraction]:
    """``{+-t, +-1/t, +-(1 + t)/(1 - t), +-(1 - t)/(1 + t)}``."""

    t = _check_parameter(Fraction(t))
    base = (t, 1 / t, (1 + t) / (1 - t), (1 - t) / (1 + t))
    return frozenset(sign * value for value in base for sign in (1, -1))


__all__ = [
    "PythagoreanError",
    "Triple",
    "TripleClass",
    "canonicalize",
    "equivalent",
    "legendre_lambda",
    "param_roundtrip",
    "parameter_of",
    "parameter_orbit",
    "side_ratios",
    "triple_from_parameter",
]
