"""Load surface documents and build the models, places and sections they describe."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cache
from importlib.resources import files
from pathlib import Path

from pydantic import ValidationError

from ..algebra import NumberField, RationalFunction, UniPoly
from ..algebra.parsing import ParseError, parse_function, parse_polynomial
from ..curves import PointError, WeierstrassModel
from ..curves.reduction import ReductionError, descend
from ..curves.twists import quadratic_twist
from ..fibers.minimal import minimal_model
from ..lattice import Section, parse_section
from .config import SurfaceSpec

logger = logging.getLogger(__name__)

FIXTURE_PACKAGE = "ellsurf.workbench"
FIXTURE_DIRECTORY = "surfaces"


class SpecError(ValueError):
    """Raised for documents that cannot be read or do not describe a valid surface."""


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def _fixture_root() -> Path:
    return Path(str(files(FIXTURE_PACKAGE).joinpath(FIXTURE_DIRECTORY)))


@cache
def _fixtures() -> dict[str, Path]:
    found: dict[str, Path] = {}
    for path in sorted(_fixture_root().glob("*.json")):
        name = json.loads(path.read_text(encoding="utf-8"))["name"]
        found[name] = path
    return found


def fixture_names() -> list[str]:
    """Names of the surfaces shipped with the package, e.g. ``E1''``."""

    return list(_fixtures())


def load_spec(reference: str | Path) -> SurfaceSpec:
    """A document from a path, a fixture name (``E1'``) or a fixture stem (``e1p``)."""

    path = Path(reference)
    if not path.is_file():
        fixtures = _fixtures()
        by_stem = {p.stem: p for p in fixtures.values()}
        found = fixtures.get(str(reference)) or by_stem.get(str(reference).lower())
        if found is None:
            raise SpecError(
                f"no surface document {reference!r}; fixtures are {', '.join(fixtures)}"
            )
        path = found
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        spec = SurfaceSpec.model_validate(data)
    except (json.JSONDecodeError, ValidationError) as exc:
        raise SpecError(f"{path.name}: {exc}") from exc
    logger.debug("loaded %s from %s", spec.name, path)
    return spec


def expected_values(name: str) -> dict[str, dict[str, object]]:
    """Published stage values of a shipped surface, keyed by stage then data key."""

    path = _fixtures().get(name)
    if path is None:
        raise SpecError(f"{name!r} is not a shipped surface")
    expected = path.parent / "expected" / path.name
    if not expected.is_file():
        return {}
    data: dict[str, dict[str, object]] = json.loads(expected.read_text(encoding="utf-8"))
    return data


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Surface:
    """A document turned into exact objects.

    ``model`` lives over the declared field; ``rational`` is the same model
    over ``Q(t)`` when its coefficients are rational, and fibers, reductions
    and counts use it.
    """

    spec: SurfaceSpec
    field: NumberField
    model: WeierstrassModel
    rational: WeierstrassModel | None
    places: tuple[UniPoly, ...]
    sections: dict[str, Section]

    @property
    def base(self) -> WeierstrassModel:
        return self.rational if self.rational is not None else self.model

    @property
    def name(self) -> str:
        return self.spec.name

    def generators(self) -> list[Section]:
        return [self.sections[name] for name in self.spec.rank.generators]

    def torsion_sections(self) -> list[Section]:
        torsion = self.spec.torsion
        return [] if torsion is None else [self.sections[name] for name in torsion.generators]

    def function(self, text: str) -> RationalFunction:
        return _function(self.spec, self.field, text)


def number_field(spec: SurfaceSpec) -> NumberField:
    if spec.field.is_rational:
        return NumberField.rationals()
    return NumberField.from_modulus(spec.field.modulus, spec.field.symbol)


def _function(spec: SurfaceSpec, field: NumberField, text: str) -> RationalFunction:
    try:
        return parse_function(text, field, spec.field.aliases)
    except ParseError as exc:
        raise SpecError(f"{spec.name}: {exc}") from exc


def _model(spec: SurfaceSpec, field: NumberField) -> WeierstrassModel:
    block = spec.model
    number = None if field.is_rational else field
    if block.form == "factored":
        r, s = (_function(spec, field, text) for text in block.roots)
        model = WeierstrassModel.factored(r, s, name=spec.name, number_field=number)
    else:
        coefficients = [
            _function(spec, field, text)
            for text in (block.a1, block.a2, block.a3, block.a4, block.a6)
        ]
        model = WeierstrassModel(*coefficients, name=spec.name, number_field=number)
    if block.twist is not None:
        model = quadratic_twist(model, _function(spec, field, block.twist), name=spec.name)
    return model


def _places(spec: SurfaceSpec, base: WeierstrassModel, field: NumberField) -> tuple[UniPoly, ...]:
    """Declared places over the field of ``base``; each must divide its minimal discriminant."""

    discriminant = minimal_model(base).discriminant
    polys = []
    for text in spec.places:
        if text == "oo":
            continue
        try:
            poly = parse_polynomial(text, field, spec.field.aliases)
        except ParseError as exc:
            raise SpecError(f"{spec.name}: place {text!r}: {exc}") from exc
        if poly.is_constant or not poly.divides(discriminant):
            raise SpecError(f"{spec.name}: place {text!r} does not divide the discriminant")
        polys.append(poly)
    return tuple(polys)


def build_surface(spec: SurfaceSpec) -> Surface:
    """Parse the model, its declared places and sections; raises :class:`SpecError`."""

    field = number_field(spec)
    try:
        model = _model(spec, field)
    except (ValueError, ArithmeticError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"{spec.name}: {exc}") from exc
    try:
        rational: WeierstrassModel | None = descend(model)
    except ReductionError:
        rational = None
    sections: dict[str, Section] = {}
    for item in spec.sections:
        try:
            sections[item.name] = parse_section(
                model, item.x, item.y, name=item.name, field=field, aliases=spec.field.aliases
            )
        except (PointError, ParseError) as exc:
            raise SpecError(f"{spec.name}: {exc}") from exc
    base = rational if rational is not None else model
    base_field = NumberField.rationals() if rational is not None else field
    places = _places(spec, base, base_field)
    surface = Surface(spec, field, model, rational, places, sections)
    logger.info("built %s over %s with %d sections", spec.name, field, len(sections))
    return surface


__all__ = [
    "SpecError",
    "Surface",
    "build_surface",
    "expected_values",
    "fixture_names",
    "load_spec",
    "number_field",
]
