"""Validated settings of the workbench and the surface documents it runs on.

A surface document is JSON: exact numbers and functions are strings read by
the expression parser (``"(t-1)^2"``, ``"2*(1+sqrt2)*t"``), integers stay
integers.  Every model is ``extra="forbid"`` so a misspelt key fails loudly.
"""

from __future__ import annotations

import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import Any, Literal

from platformdirs import user_cache_dir
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

from ..counting import CountingSettings, Strategy


class Emit(str, Enum):
    """Format of report files."""

    TEXT = "text"
    CSV = "csv"
    JSON = "json"

    @property
    def suffix(self) -> str:
        return {Emit.TEXT: ".txt", Emit.CSV: ".csv", Emit.JSON: ".json"}[self]


class RankMethod(str, Enum):
    """Where the Picard number entering Shioda-Tate comes from."""

    RATIONAL = "rational"
    HODGE = "hodge"
    PICARD = "picard"
    ARTIN_TATE = "artin-tate"
    ADDITIVITY = "additivity"


def default_cache_dir() -> Path:
    """Per-user cache directory, or ``.ellsurf-cache`` when it cannot be created."""

    try:
        base = Path(user_cache_dir("ellsurf", appauthor=False))
        base.mkdir(parents=True, exist_ok=True)
        return base
    except OSError:
        fallback = Path(".ellsurf-cache")
        fallback.mkdir(parents=True, exist_ok=True)
        return fallback


class WorkbenchSettings(BaseModel):
    """Knobs of one workbench run; none of them changes a reported number."""

    model_config = ConfigDict(extra="forbid")

    cache_dir: Path | None = Field(default=None)
    use_cache: bool = Field(default=True)
    report_dir: Path = Field(default=Path("reports"))
    emit: Emit = Field(default=Emit.TEXT)
    threads: int = Field(default=1, ge=1)
    strategy: Strategy = Field(default=Strategy.AUTO)
    audit_fraction: float = Field(default=0.01, gt=0.0, le=1.0)
    audit_seed: int = Field(default=0, ge=0)

    def resolved_cache_dir(self) -> Path:
        return self.cache_dir if self.cache_dir is not None else default_cache_dir()

    def counting(self) -> CountingSettings:
        return CountingSettings(strategy=self.strategy, threads=self.threads)


# ---------------------------------------------------------------------------
# Surface documents
# ---------------------------------------------------------------------------


class FieldSpec(BaseModel):
    """``Q[z]/(modulus)`` with the modulus listed high to low; empty means ``Q``."""

    model_config = ConfigDict(extra="forbid")

    modulus: list[int] = Field(default_factory=list)
    symbol: str = Field(default="z")
    aliases: dict[str, str] = Field(default_factory=dict)

    @property
    def is_rational(self) -> bool:
        return len(self.modulus) <= 2


class ModelSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    form: Literal["factored", "weierstrass"] = Field(default="factored")
    roots: list[str] = Field(default_factory=list)
    twist: str | None = Field(default=None)
    a1: str = Field(default="0")
    a2: str = Field(default="0")
    a3: str = Field(default="0")
    a4: str = Field(default="0")
    a6: str = Field(default="0")

    @model_validator(mode="after")
    def _check_form(self) -> ModelSpec:
        if self.form == "factored" and len(self.roots) != 2:
            raise ValueError("the factored form y^2 = x (x - r)(x - s) needs two roots r, s")
        if self.form == "weierstrass" and self.roots:
            raise ValueError("roots only apply to the factored form")
        return self


class SectionSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    x: str
    y: str


class TorsionSpec(BaseModel):
    """Structure bound for the torsion search and the declared torsion sections."""

    model_config = ConfigDict(extra="forbid")

    bound: list[int] = Field(default_factory=list)
    generators: list[str] = Field(default_factory=list)

    @field_validator("bound")
    @classmethod
    def _positive(cls, value: list[int]) -> list[int]:
        if any(order < 1 for order in value):
            raise ValueError("group orders must be positive")
        return value


class ReductionSpec(BaseModel):
    """Primes of good reduction, counting depth and the extra Frobenius-stable classes.

    Counts are taken over ``F_q`` with ``q = p**base_power``.  ``residue_roots``
    maps a prime to a root of the field modulus modulo that prime.  Each entry
    of ``extra_classes`` is ``(cycle length, sign)`` for the ``q``-Frobenius.
    """

    model_config = ConfigDict(extra="forbid")

    primes: list[int] = Field(min_length=1)
    depth: int = Field(default=1, ge=1)
    base_power: int = Field(default=1, ge=1)
    residue_roots: dict[int, int] = Field(default_factory=dict)
    extra_classes: list[tuple[int, int]] = Field(default_factory=list)
    acknowledge_bad_reduction: bool = Field(default=False)

    @field_validator("primes")
    @classmethod
    def _odd_primes(cls, value: list[int]) -> list[int]:
        for p in value:
            if p < 5 or not isprime(p):
                raise ValueError(f"{p} is not a prime of characteristic at least 5")
        if len(set(value)) != len(value):
            raise ValueError("primes must be distinct")
        return value

    @field_validator("extra_classes")
    @classmethod
    def _classes(cls, value: list[tuple[int, int]]) -> list[tuple[int, int]]:
        for length, sign in value:
            if length < 1 or sign not in (1, -1):
                raise ValueError(f"extra class ({length}, {sign}) needs length >= 1, sign +-1")
        return value


class DescentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pair: tuple[int, int] = Field(default=(0, 1))
    admissible: list[int] = Field(default_factory=lambda: [1, 2])


class CoverSpec(BaseModel):
    """``this = base o phi`` and ``twist = base`` twisted by the class of ``phi``."""

    model_config = ConfigDict(extra="forbid")

    base: str
    twist: str
    phi: str


class RankSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    method: RankMethod
    generators: list[str] = Field(default_factory=list)
    gram_scale: Literal[1, 4] = Field(default=1)
    conjugations: list[int] = Field(default_factory=list)
    descent: DescentSpec | None = Field(default=None)


class SurfaceSpec(BaseModel):
    """One elliptic surface and everything the pipeline needs to run on it."""

    model_config = ConfigDict(extra="forbid")

    name: str
    description: str = Field(default="")
    field: FieldSpec = Field(default_factory=FieldSpec)
    model: ModelSpec
    places: list[str] = Field(default_factory=list)
    sections: list[SectionSpec] = Field(default_factory=list)
    torsion: TorsionSpec | None = Field(default=None)
    reduction: ReductionSpec | None = Field(default=None)
    rank: RankSpec
    cover: CoverSpec | None = Field(default=None)

    @model_validator(mode="after")
    def _check_references(self) -> SurfaceSpec:
        names = [section.name for section in self.sections]
        if len(set(names)) != len(names):
            raise ValueError("section names must be unique")
        referenced = list(self.rank.generators)
        if self.torsion is not None:
            referenced.extend(self.torsion.generators)
        missing = sorted(set(referenced) - set(names))
        if missing:
            raise ValueError(f"undeclared sections {missing}")
        if self.rank.method is RankMethod.ADDITIVITY and self.cover is None:
            raise ValueError("rank by additivity needs a cover block")
        if self.rank.method in (RankMethod.PICARD, RankMethod.ARTIN_TATE):
            if self.reduction is None:
                raise ValueError(f"rank method {self.rank.method.value} needs a reduction block")
        if self.rank.method is RankMethod.ARTIN_TATE:
            assert self.reduction is not None
            if len(self.reduction.primes) < 2:
                raise ValueError("need two primes")
        return self

    def canonical(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    @property
    def spec_hash(self) -> str:
        return hashlib.blake2b(self.canonical().encode(), digest_size=16).hexdigest()

    @property
    def model_hash(self) -> str:
        """Hash of the field and model blocks: two documents for one model share traces."""

        payload: dict[str, Any] = {
            "field": self.field.model_dump(mode="json"),
            "model": self.model.model_dump(mode="json"),
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.blake2b(text.encode(), digest_size=16).hexdigest()

    @property
    def slug(self) -> str:
        return self.name.replace("''", "pp").replace("'", "p").lower()

    def with_overrides(
        self, primes: list[int] | None = None, depth: int | None = None
    ) -> SurfaceSpec:
        """The document with command-line primes and depth applied."""

        if primes is None and depth is None:
            return self
        if self.reduction is None:
            raise ValueError(f"{self.name} declares no reduction; --prime and --depth do not apply")
        update: dict[str, Any] = {}
        if primes is not None:
            update["primes"] = primes
        if depth is not None:
            update["depth"] = depth
        reduction = ReductionSpec.model_validate(self.reduction.model_dump() | update)
        return SurfaceSpec.model_validate(self.model_dump() | {"reduction": reduction.model_dump()})


__all__ = [
    "CoverSpec",
    "DescentSpec",
    "Emit",
    "FieldSpec",
    "ModelSpec",
    "RankMethod",
    "RankSpec",
    "ReductionSpec",
    "SectionSpec",
    "SurfaceSpec",
    "TorsionSpec",
    "WorkbenchSettings",
    "default_cache_dir",
]
