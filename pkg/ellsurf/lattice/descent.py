"""Complete 2-descent on models with full 2-torsion.

For ``y^2 = (x - e1)(x - e2)(x - e3)`` the map
``psi(P) = (x - e_i, x - e_j)`` into pairs of square classes is a
homomorphism with kernel ``2E(K)``.  At the 2-torsion point ``(e_i, 0)`` the
coordinate ``x - e_i`` is replaced by ``(e_i - e_j)(e_i - e_k)``, and the
zero section maps to the trivial pair.

Saturation at 2: the image of a subgroup ``H`` generated by sections and
torsion has size ``2^(r + t)`` exactly when it fills the image of the whole
group, ``r`` being the rank and ``t`` the number of even cyclic factors of
the torsion.  A proper subgroup of index ``n = d_1 ... d_r`` (``d_1 | ... | d_r``)
loses one dimension for every even ``d_i``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import product as cartesian

from ..algebra import RationalFunction, UniPoly
from ..algebra.squares import (
    SquareClass,
    SquareMode,
    coprime_base,
    function_class,
    parity_vector,
)
from ..curves import CurveError, CurvePoint, WeierstrassModel
from ..fibers.symbols import FiniteAbelianGroup
from .sections import LatticeError, SectionLike, as_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DescentImage:
    first: SquareClass
    second: SquareClass

    @property
    def is_trivial(self) -> bool:
        return self.first.is_trivial and self.second.is_trivial

    def __mul__(self, other: DescentImage) -> DescentImage:
        return DescentImage(self.first * other.first, self.second * other.second)

    def kernels(self) -> tuple[UniPoly, UniPoly]:
        return self.first.kernel, self.second.kernel

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"


def _roots(model: WeierstrassModel) -> tuple[RationalFunction, ...]:
    if model.roots is None:
        raise CurveError("2-descent needs the factored form")
    return tuple(model.roots)


def _coordinate(
    x: RationalFunction, roots: Sequence[RationalFunction], index: int
) -> RationalFunction:
    value = x - roots[index]
    if value:
        return value
    others = [e for k, e in enumerate(roots) if k != index]
    return (roots[index] - others[0]) * (roots[index] - others[1])


def two_descent_image(
    value: SectionLike,
    *,
    pair: tuple[int, int] = (0, 1),
    mode: SquareMode = SquareMode.GEOMETRIC,
) -> DescentImage:
    """``psi(P)`` using the roots ``e_i, e_j`` selected by ``pair``."""

    point = as_point(value)
    roots = _roots(point.curve)
    if point.is_infinity:
        one = SquareClass(UniPoly.one(roots[0].domain), 1, mode)
        return DescentImage(one, one)
    x = point.x
    first, second = (function_class(_coordinate(x, roots, k), mode) for k in pair)
    return DescentImage(first, second)


# ---------------------------------------------------------------------------
# Ranks over F_2
# ---------------------------------------------------------------------------


def _bits(images: Sequence[DescentImage]) -> list[int]:
    kernels = [k for image in images for k in image.kernels() if not k.is_constant]
    base = coprime_base(kernels) if kernels else []
    vectors = []
    for image in images:
        bits = 0
        for cls in (image.first, image.second):
            bits <<= 1
            bits |= 1 if cls.content != 1 else 0
            for parity in parity_vector(cls.kernel, base):
                bits = (bits << 1) | parity
        vectors.append(bits)
    return vectors


def image_dimension(images: Sequence[DescentImage]) -> int:
    """Dimension over ``F_2`` of the span of ``images``."""

    basis: list[int] = []
    for vector in _bits(images):
        for element in basis:
            vector = min(vector, vector ^ element)
        if vector:
            basis.append(vector)
    return len(basis)


# ---------------------------------------------------------------------------
# Saturation
# ---------------------------------------------------------------------------


def _divisor_chains(n: int, length: int) -> list[tuple[int, ...]]:
    """Tuples ``d_1 | d_2 | ... | d_length`` with product ``n``."""

    if length == 0:
        return [()] if n == 1 else []
    chains = []

    def extend(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 0:
            if remaining == 1:
                chains.append(prefix)
            return
        last = prefix[-1] if prefix else 1
        for d in range(last, remaining + 1, last):
            if remaining % d == 0:
                extend((*prefix, d), remaining // d, slots - 1)

    extend((), n, length)
    return chains


@dataclass(frozen=True, slots=True)
class SaturationVerdict:
    image_size: int
    full_size: int
    surviving: tuple[int, ...]
    patterns: dict[int, tuple[tuple[int, ...], ...]] = field(default_factory=dict)

    @property
    def saturated(self) -> bool:
        return not self.surviving

    @property
    def message(self) -> str:
        if self.saturated:
            return f"saturated (|eta(H)| = {self.image_size})"
        return f"index may be {', '.join(map(str, self.surviving))}"

    def __str__(self) -> str:
        return self.message


def saturation_check(
    generators: Sequence[SectionLike],
    torsion: Sequence[SectionLike] = (),
    torsion_group: FiniteAbelianGroup | None = None,
    admissible: Iterable[int] = (1,),
    *,
    pair: tuple[int, int] = (0, 1),
) -> SaturationVerdict:
    """Rule out indices ``n > 1`` by comparing ``|eta(H)|`` with ``2^(r + t)``.

    ``torsion`` lists generators of the torsion subgroup and ``torsion_group``
    its structure (``Z/2`` for each listed point when omitted).  For every
    admissible ``n`` the divisor patterns of an index-``n`` subgroup are
    enumerated; a pattern survives when it loses no more dimensions than
    the observed image allows.
    """

    images = [two_descent_image(g, pair=pair) for g in (*generators, *torsion)]
    dimension = image_dimension(images)
    group = torsion_group or FiniteAbelianGroup((2,) * len(torsion))
    even = sum(1 for order in group.orders if order % 2 == 0)
    full = len(generators) + even
    if dimension > full:
        raise LatticeError(f"descent image of dimension {dimension} exceeds {full}")
    surviving = []
    patterns: dict[int, tuple[tuple[int, ...], ...]] = {}
    for n in sorted(set(admissible)):
        if n == 1:
            continue
        chains = _divisor_chains(n, len(generators))
        alive = tuple(
            chain for chain in chains if full - sum(1 for d in chain if d % 2 == 0) >= dimension
        )
        patterns[n] = alive
        if alive:
            surviving.append(n)
    verdict = SaturationVerdict(2**dimension, 2**full, tuple(surviving), patterns)
    logger.info("2-descent: %s", verdict.message)
    return verdict


@dataclass(frozen=True, slots=True)
class CosetCheck:
    images: tuple[DescentImage, ...]

    @property
    def passed(self) -> bool:
        """No translate lies in ``2E(K)``."""

        return not any(image.is_trivial for image in self.images)


def coset_check(
    value: SectionLike, torsion: Sequence[SectionLike], *, pair: tuple[int, int] = (0, 1)
) -> CosetCheck:
    """``psi(P + T)`` for ``T`` running over the sums of subsets of ``torsion``.

    The empty subset gives ``P`` itself.
    """

    point = as_point(value)
    elements = [as_point(t) for t in torsion]
    translates: list[CurvePoint] = []
    for mask in cartesian((0, 1), repeat=len(elements)):
        translate = point
        for bit, element in zip(mask, elements, strict=True):
            if bit:
                translate = translate + element
        translates.append(translate)
    return CosetCheck(tuple(two_descent_image(p, pair=pair) for p in translates))


__all__ = [
    "CosetCheck",
    "DescentImage",
    "SaturationVerdict",
    "coset_check",
    "image_dimension",
    "saturation_check",
    "two_descent_image",
]
