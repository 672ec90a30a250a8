"""Tate's algorithm on integral minimal short models, place by place.

On ``Y^2 = X^3 + A X + B`` over a field of characteristic other than 2
and 3, the fiber type at a place is read off the valuations of ``A``,
``B`` and ``4A^3 + 27B^2``.  Splitness comes from the leading residues:

* ``I_n``: split iff ``6 B`` is a square (the class of ``-c6``);
* ``IV``/``IV*``: the free arms are rational iff ``B / pi^2`` or
  ``B / pi^4`` is a square;
* ``I0*``: the Galois orbits on the roots of ``X^3 + (A/pi^2) X + B/pi^3``;
* ``I_n*``: the far leaves are rational iff ``-D`` (``n`` even) or
  ``-2 a b D`` (``n`` odd) is a square, ``D`` the unit part of the
  discriminant and ``a``, ``b`` the residues of ``A/pi^2``, ``B/pi^3``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from ..algebra import UniPoly
from ..algebra.domains import characteristic
from ..algebra.factoring import factor
from ..algebra.places import Place
from ..curves import WeierstrassModel
from .graphs import FiberGraph, FrobeniusAction, fiber_graph, frobenius_action
from .minimal import LocalModel, MinimalModel, minimal_model
from .residue import ResidueField
from .symbols import FiniteAbelianGroup, KodairaSymbol

logger = logging.getLogger(__name__)

_BY_DISCRIMINANT = {2: "II", 3: "III", 4: "IV", 6: "I*", 8: "IV*", 9: "III*", 10: "II*"}


class TateError(ValueError):
    """Raised for valuations outside Kodaira's list or unsupported characteristics."""


def classify(va: int, vb: int, vdelta: int) -> KodairaSymbol:
    """Kodaira symbol of a minimal short model from ``v(A)``, ``v(B)`` and ``v(4A^3 + 27B^2)``."""

    if va >= 4 and vb >= 6:
        raise TateError("model is not minimal at this place")
    if vdelta == 0:
        return KodairaSymbol.good()
    if va == 0:
        return KodairaSymbol("I", vdelta)
    if va == 2 and vb == 3 and vdelta >= 6:
        return KodairaSymbol("I*", vdelta - 6)
    name = _BY_DISCRIMINANT.get(vdelta)
    if name is None:
        raise TateError(f"no Kodaira type for valuations ({va}, {vb}, {vdelta})")
    if name == "I*":
        return KodairaSymbol("I*", 0)
    return KodairaSymbol(name)


@dataclass(frozen=True, slots=True)
class KodairaFiber:
    """Outcome of Tate's algorithm at one place.

    ``splitness`` is ``"split"``/``"non-split"``, an orbit pattern
    (``"1+1+1"``, ``"1+2"``, ``"3"``) for ``I0*``, or ``None`` when the
    residue field is out of reach.  ``frobenius_action`` is the action of
    the ``q^d``-power Frobenius on one geometric fiber over a place of
    degree ``d``; it is only set over finite fields.
    """

    place: Place
    symbol: KodairaSymbol
    splitness: str | None = None
    valuations: tuple[int, int, int] = (0, 0, 0)
    residue_size: int | None = None
    frobenius_action: FrobeniusAction | None = field(default=None, compare=False)

    @property
    def components(self) -> int:
        return self.symbol.components

    @property
    def euler(self) -> int:
        return self.symbol.euler

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.symbol.group

    @property
    def degree(self) -> int:
        return self.place.degree

    @property
    def is_good(self) -> bool:
        return self.symbol.is_good

    @property
    def graph(self) -> FiberGraph:
        return fiber_graph(self.symbol)

    @property
    def is_split(self) -> bool | None:
        if self.splitness is None:
            return None
        return self.splitness in ("split", "1+1+1")

    def __str__(self) -> str:
        text = f"{self.place}: {self.symbol}"
        if self.splitness:
            text += f" [{self.splitness}]"
        return text


def _residue_field(local: LocalModel) -> ResidueField:
    return ResidueField(local.uniformizer)


def _split_word(value: bool | None) -> str | None:
    if value is None:
        return None
    return "split" if value else "non-split"


def splitness(symbol: KodairaSymbol, local: LocalModel) -> str | None:
    """Splitness descriptor of a bad fiber from the residues of the local model."""

    residue = _residue_field(local)
    name, n = symbol.name, symbol.n
    if symbol.is_good:
        return None
    if name == "I":
        return _split_word(residue.is_square(6 * local.residue(local.b, 0)))
    if name == "IV":
        return _split_word(residue.is_square(local.residue(local.b, 2)))
    if name == "IV*":
        return _split_word(residue.is_square(local.residue(local.b, 4)))
    if name == "I*":
        a = local.residue(local.a, 2)
        b = local.residue(local.b, 3)
        if n == 0:
            pattern = residue.cubic_pattern(a, b)
            return None if pattern is None else "+".join(str(k) for k in pattern)
        unit = local.unit(local.discriminant)
        if n % 2 == 0:
            return _split_word(residue.is_square(-unit))
        return _split_word(residue.is_square(-2 * a * b * unit))
    return "split"


def tate_fiber_analysis(model: WeierstrassModel | MinimalModel, place: Place) -> KodairaFiber:
    """Kodaira type, splitness and (over ``F_q``) the Frobenius action at ``place``.

    A place where the model is smooth gives the good-fiber marker ``I0``.
    """

    minimal = model if isinstance(model, MinimalModel) else minimal_model(model)
    p = characteristic(minimal.domain)
    if p in (2, 3):
        raise TateError(f"characteristic {p} is not supported")
    local = minimal.local(place)
    symbol = classify(local.va, local.vb, local.vdelta)
    valuations = (local.va, local.vb, local.vdelta)
    if symbol.is_good:
        return KodairaFiber(place, symbol, None, valuations)
    split = splitness(symbol, local)
    residue = _residue_field(local)
    action = None
    if residue.is_finite and split is not None:
        action = frobenius_action(fiber_graph(symbol), split)
    logger.debug("fiber at %s: %s %s", place, symbol, split or "")
    return KodairaFiber(place, symbol, split, valuations, residue.size, action)


# ---------------------------------------------------------------------------
# All bad places
# ---------------------------------------------------------------------------


def bad_places(minimal: MinimalModel, candidates: Sequence[UniPoly] = ()) -> list[Place]:
    """Places where ``4A^3 + 27B^2`` vanishes, infinity included.

    Over ``Q`` irreducible factors of degree above four must be supplied
    as ``candidates`` (``FactorizationError("supply places")`` otherwise).
    """

    places = [Place(poly, "factor") for poly, _ in factor(minimal.discriminant, candidates)]
    places.sort(key=Place.sort_key)
    if minimal.infinity_valuations()[2] > 0:
        places.append(Place.infinity())
    return places


def fiber_table(
    model: WeierstrassModel | MinimalModel, candidates: Sequence[UniPoly] = ()
) -> list[KodairaFiber]:
    """Every singular fiber, finite places first by degree, then infinity."""

    minimal = model if isinstance(model, MinimalModel) else minimal_model(model)
    fibers = [tate_fiber_analysis(minimal, place) for place in bad_places(minimal, candidates)]
    return [fiber for fiber in fibers if not fiber.is_good]


__all__ = [
    "KodairaFiber",
    "TateError",
    "bad_places",
    "classify",
    "fiber_table",
    "splitness",
    "tate_fiber_analysis",
]
