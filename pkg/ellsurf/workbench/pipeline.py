"""Run the stage chain on one surface document and write its reports.

The stages, in order, are ``fibers``, ``reduce``, ``count``, ``charpoly``,
``picard``, ``rank`` and ``descent``.  A command names the last stage to run;
``artin-tate`` runs through ``picard`` and insists on the discriminant gate,
``report`` (or ``all``) runs everything that applies to the document.
Stages that do not apply (no reduction block, no descent block) are left
out of the chain.  Any failure inside a stage surfaces as
:class:`StageError`, which names the stage.
"""

from __future__ import annotations

import hashlib
import logging
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import polars as pl
from sympy import factor

from .. import __version__
from ..algebra import GaloisMap, NumberField
from ..algebra.parsing import parse_function
from ..counting import SurfaceCounter, TraceVector
from ..curves import WeierstrassModel
from ..curves.reduction import ResidueMap, reduce_mod_p
from ..curves.twists import certify_double_cover
from ..fibers import FiniteAbelianGroup
from ..fibers.invariants import (
    ConfigurationError,
    ReductionReport,
    SurfaceInvariants,
    invariants_from_fibers,
    verify_good_reduction,
)
from ..fibers.minimal import minimal_model
from ..fibers.tate import KodairaFiber, fiber_table
from ..lattice import (
    HeightGram,
    HeightPairing,
    LatticeError,
    MWReport,
    RankRecord,
    Section,
    ShiodaTate,
    TorsionGroup,
    galois_rank_over_q,
    gram_index_bound,
    saturation_check,
    shioda_tate_rank,
    torsion_subgroup,
    twist_rank_additivity,
)
from ..pythagorean import search_report
from ..spectra import (
    AmbiguousCompletion,
    CharPoly,
    DiscriminantClass,
    DualityError,
    GateVerdict,
    PicardBoundReport,
    artin_tate_class,
    discriminant_gate,
    duality_branches,
    picard_bound,
    trivial_lattice_charpoly,
)
from .cache import TraceCache
from .config import RankMethod, SurfaceSpec, WorkbenchSettings
from .reports import Provenance, StageArtifact, write_report
from .surfaces import SpecError, Surface, build_surface, load_spec

logger = logging.getLogger(__name__)

STAGES: tuple[str, ...] = ("fibers", "reduce", "count", "charpoly", "picard", "rank", "descent")
COMMANDS: tuple[str, ...] = (*STAGES, "artin-tate", "report", "all")
REDUCTION_STAGES = frozenset({"reduce", "count", "charpoly", "picard"})
_LAST_STAGE = {"artin-tate": "picard", "report": "descent", "all": "descent"}

STAGE_FAILURES: tuple[type[Exception], ...] = (
    ValueError,
    ArithmeticError,
    LookupError,
    RuntimeError,
    NotImplementedError,
)


class StageError(RuntimeError):
    """A pipeline failure attributed to one stage."""

    def __init__(self, stage: str, error: str, message: str) -> None:
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.error = error
        self.message = message

    def diagnostic(self) -> dict[str, str]:
        return {"stage": self.stage, "error": self.error, "message": self.message}


def error_code(exc: BaseException) -> str:
    """``AmbiguousCompletion`` -> ``ambiguous_completion``."""

    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


class _StageLog:
    """Begin/end records of the stages of one run."""

    def __init__(self, name: str) -> None:
        self._name = name
        self.records: list[tuple[str, str]] = []

    def begin(self, stage: str) -> None:
        self.records.append((stage, "begin"))
        logger.info("%s: %s begins", self._name, stage)

    def end(self, stage: str, *, summary: Sequence[str] = ()) -> None:
        self.records.append((stage, "end"))
        logger.info("%s: %s ends%s", self._name, stage, f" ({summary[0]})" if summary else "")


# ---------------------------------------------------------------------------
# Formatting helpers
# ---------------------------------------------------------------------------


def _patterns(patterns: Mapping[str, list[int]]) -> str:
    if not patterns:
        return "-"
    return "; ".join(
        f"{symbol}:{','.join(map(str, degrees))}" for symbol, degrees in patterns.items()
    )


def factored(charpoly: CharPoly) -> str:
    """``(x - 17)^18`` rather than the expanded coefficients."""

    return str(factor(charpoly.to_poly().as_expr())).replace("**", "^")


def _fraction(value: Fraction) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# Per-prime state
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class PrimeData:
    p: int
    residue: ResidueMap
    report: ReductionReport
    reduced: WeierstrassModel
    vector: TraceVector | None = None
    trivial: CharPoly | None = None
    unknown: CharPoly | None = None
    charpoly: CharPoly | None = None
    sign: int | None = None
    bound: PicardBoundReport | None = None
    klass: DiscriminantClass | None = None


@dataclass(slots=True)
class RankOutcome:
    geometric: int
    exact: bool
    record: RankRecord
    shioda_tate: ShiodaTate | None = None
    rational: int | None = None
    torsion: TorsionGroup | None = None
    inputs: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


class Pipeline:
    """State of one run over one surface document."""

    def __init__(self, spec: SurfaceSpec, settings: WorkbenchSettings | None = None) -> None:
        self.spec = spec
        self.settings = settings or WorkbenchSettings()
        try:
            self.surface: Surface = build_surface(spec)
        except SpecError as exc:
            raise StageError("spec", "spec_error", str(exc)) from exc
        self.artifacts: list[StageArtifact] = []
        self.completed: list[str] = []
        self.dependencies: dict[str, str] = {}
        self.primes: dict[int, PrimeData] = {}
        self.fibers: list[KodairaFiber] = []
        self.invariants: SurfaceInvariants | None = None
        self.picard_number: int | None = None
        self.gate: GateVerdict | None = None
        self.rank: RankOutcome | None = None
        self.require_gate = False
        self._pairing: HeightPairing | None = None
        self._log = _StageLog(spec.name)

    # chain ------------------------------------------------------------

    def applies(self, stage: str) -> bool:
        if stage in REDUCTION_STAGES:
            return self.spec.reduction is not None
        if stage == "descent":
            return self.spec.rank.descent is not None
        return True

    def chain(self, command: str) -> list[str]:
        if command not in COMMANDS:
            raise StageError(
                "pipeline", "unknown_command", f"{command!r}; commands are {', '.join(COMMANDS)}"
            )
        last = _LAST_STAGE.get(command, command)
        if command not in ("report", "all") and not self.applies(last):
            block = "reduction" if last in REDUCTION_STAGES else "descent"
            raise StageError(last, "not_applicable", f"{self.spec.name} declares no {block} block")
        stages = STAGES[: STAGES.index(last) + 1]
        return [stage for stage in stages if self.applies(stage)]

    def run(self, command: str) -> list[StageArtifact]:
        stages = self.chain(command)
        if command == "artin-tate":
            reduction = self.spec.reduction
            if reduction is None or len(reduction.primes) < 2:
                raise StageError("picard", "need_two_primes", "need two primes")
            self.require_gate = True
        for stage in stages:
            if stage in self.completed:
                continue
            self._log.begin(stage)
            try:
                artifact = getattr(self, f"_stage_{stage}")()
            except StageError:
                raise
            except STAGE_FAILURES as exc:
                logger.debug("%s failed in %s", self.spec.name, stage, exc_info=True)
                raise StageError(stage, error_code(exc), str(exc)) from exc
            self.artifacts.append(artifact)
            self.completed.append(stage)
            self._log.end(stage, summary=artifact.summary)
        return self.artifacts

    def provenance(self, upto: int | None = None) -> Provenance:
        stages = tuple(self.completed if upto is None else self.completed[:upto])
        return Provenance(
            name=self.spec.name,
            spec_hash=self.spec.spec_hash,
            version=__version__,
            stages=stages,
            dependencies=tuple(sorted(self.dependencies.items())),
        )

    # shared helpers -----------------------------------------------------

    @property
    def pairing(self) -> HeightPairing:
        if self._pairing is None:
            self._pairing = HeightPairing(self.surface.model)
        return self._pairing

    def _invariants(self) -> SurfaceInvariants:
        if self.invariants is None:
            raise StageError("fibers", "missing_stage", "fiber invariants were not computed")
        return self.invariants

    def _store_key(self, p: int) -> str:
        if self.surface.rational is not None:
            return self.spec.model_hash
        assert self.spec.reduction is not None
        return f"{self.spec.model_hash}-r{self.spec.reduction.residue_roots.get(p)}"

    def _gram(self, generators: Sequence[Section]) -> HeightGram:
        return self.pairing.gram(generators, self.spec.rank.gram_scale)

    # stages -------------------------------------------------------------

    def _stage_fibers(self) -> StageArtifact:
        minimal = minimal_model(self.surface.base)
        fibers = fiber_table(minimal, self.surface.places)
        invariants = invariants_from_fibers(fibers)
        if invariants.chi != minimal.chi:
            raise ConfigurationError(
                f"fiber configuration inconsistent (chi {invariants.chi} vs weight {minimal.chi})"
            )
        self.fibers, self.invariants = fibers, invariants
        rows = tuple(
            (
                str(fiber.place),
                str(fiber.degree),
                str(fiber.symbol),
                fiber.splitness or "-",
                str(fiber.components),
                str(fiber.euler),
                str(fiber.group),
            )
            for fiber in fibers
        )
        summary = (
            f"euler number {invariants.euler}",
            f"chi {invariants.chi}",
            f"kodaira dimension {invariants.kodaira_dimension.value} ({invariants.kind})",
            f"b2 {invariants.b2}",
            f"trivial rank {invariants.trivial_rank}",
            f"torsion bound {invariants.torsion_bound}",
            f"hodge bound {invariants.hodge_bound}",
        )
        return StageArtifact(
            "fibers",
            f"{self.spec.name}: singular fibers",
            ("place", "degree", "type", "splitness", "components", "euler", "group"),
            rows,
            summary,
            {
                "euler": str(invariants.euler),
                "chi": str(invariants.chi),
                "b2": str(invariants.b2),
                "trivial_rank": str(invariants.trivial_rank),
            },
        )

    def _stage_reduce(self) -> StageArtifact:
        reduction = self.spec.reduction
        assert reduction is not None
        rows = []
        notes = []
        for p in reduction.primes:
            root = reduction.residue_roots.get(p)
            if self.surface.rational is not None:
                residue = ResidueMap(p)
            else:
                residue = ResidueMap(p, root, self.surface.field)
            report = verify_good_reduction(self.surface.base, residue, self.surface.places)
            if not report:
                message = f"reduction at {p} is not good: {'; '.join(report.mismatches)}"
                if not reduction.acknowledge_bad_reduction:
                    raise StageError("reduce", "bad_reduction", message)
                logger.warning("%s (acknowledged)", message)
                notes.append(f"{message} (acknowledged)")
            reduced = reduce_mod_p(self.surface.base, residue)
            self.primes[p] = PrimeData(p, residue, report, reduced)
            rows.append(
                (
                    str(p),
                    "-" if root is None else str(root),
                    "good" if report else "bad",
                    _patterns(report.characteristic_zero),
                    _patterns(report.reduced),
                )
            )
        summary = tuple(
            f"p={p}: {'good' if data.report else 'bad'} reduction"
            for p, data in self.primes.items()
        )
        return StageArtifact(
            "reduce",
            f"{self.spec.name}: reduction",
            ("prime", "residue root", "reduction", "over Q", "over F_p"),
            tuple(rows),
            (*summary, *notes),
        )

    def _stage_count(self) -> StageArtifact:
        reduction = self.spec.reduction
        assert reduction is not None
        counting = self.settings.counting()
        cache = TraceCache(self.settings.resolved_cache_dir()) if self.settings.use_cache else None
        rows = []
        summary = []
        for p, data in self.primes.items():
            store = cache.store(self._store_key(p), p) if cache is not None else None
            counter = SurfaceCounter(data.reduced, counting, store=store)
            vector = counter.surface_count(reduction.depth, reduction.base_power)
            data.vector = vector
            for m, (count, trace) in enumerate(
                zip(vector.counts, vector.traces(), strict=True), start=1
            ):
                rows.append((str(p), str(vector.q), str(m), str(count), str(trace)))
            summary.append(f"p={p}: #S(F_{vector.q}^m) = {', '.join(map(str, vector.counts))}")
        return StageArtifact(
            "count",
            f"{self.spec.name}: point counts",
            ("prime", "q", "m", "count", "trace"),
            tuple(rows),
            tuple(summary),
            {str(p): [str(c) for c in d.vector.counts] for p, d in self.primes.items() if d.vector},
        )

    def _stage_charpoly(self) -> StageArtifact:
        reduction = self.spec.reduction
        assert reduction is not None
        invariants = self._invariants()
        rows = []
        summary = []
        for p, data in self.primes.items():
            assert data.vector is not None
            known = trivial_lattice_charpoly(
                data.report.fibers,
                p,
                base_power=reduction.base_power,
                extra=reduction.extra_classes,
            )
            branches = duality_branches(data.vector.traces(), known, invariants.b2)
            if not branches:
                raise DualityError("no consistent completion")
            if len(branches) > 1:
                raise AmbiguousCompletion(branches)
            branch = branches[0]
            data.trivial, data.unknown, data.charpoly = known, branch.unknown, branch.full
            data.sign = branch.sign
            q = str(data.vector.q)
            rows.append((str(p), q, "trivial", str(known.degree), factored(known)))
            rows.append((str(p), q, "unknown", str(branch.unknown.degree), str(branch.unknown)))
            full = factored(branch.full)
            rows.append((str(p), q, "full", str(branch.full.degree), full))
            summary.append(f"p={p}: {full}, sign {branch.sign:+d}")
        return StageArtifact(
            "charpoly",
            f"{self.spec.name}: Frobenius on H^2",
            ("prime", "q", "factor", "degree", "polynomial"),
            tuple(rows),
            tuple(summary),
            {str(p): str(d.charpoly) for p, d in self.primes.items()},
        )

    def _stage_picard(self) -> StageArtifact:
        invariants = self._invariants()
        rows = []
        summary = []
        for p, data in self.primes.items():
            assert data.charpoly is not None
            data.bound = picard_bound(data.charpoly, invariants.trivial_rank)
            summary.append(f"p={p}: {data.bound.conclusion}")
        bound = min(data.bound.bound for data in self.primes.values() if data.bound)
        if self.require_gate or self.spec.rank.method is RankMethod.ARTIN_TATE:
            for p, data in self.primes.items():
                assert data.charpoly is not None
                data.klass = artin_tate_class(data.charpoly, prime=p)
            classes = [data.klass for data in self.primes.values() if data.klass is not None]
            self.gate = discriminant_gate(classes, bound)
            summary.append(f"discriminant gate: {self.gate.message}")
            if self.gate.conclusive and self.gate.bound is not None:
                bound = self.gate.bound
        self.picard_number = bound
        summary.append(f"picard number <= {bound}")
        for p, data in self.primes.items():
            assert data.bound is not None
            rows.append(
                (
                    str(p),
                    str(data.bound.q),
                    str(data.bound.cyclotomic),
                    str(data.bound.mordell_weil_bound),
                    "-" if data.klass is None else str(data.klass),
                )
            )
        data_out: dict[str, object] = {"bound": str(bound)}
        if self.gate is not None:
            data_out["gate"] = self.gate.message
        return StageArtifact(
            "picard",
            f"{self.spec.name}: Picard bounds",
            ("prime", "q", "cyclotomic", "mordell-weil bound", "class"),
            tuple(rows),
            tuple(summary),
            data_out,
        )

    def _stage_rank(self) -> StageArtifact:
        generators = self.surface.generators()
        independent = 0
        if generators:
            if self._gram(generators).determinant == 0:
                raise LatticeError("dependent generators")
            independent = len(generators)
        outcome = self._rank(independent)
        if self.spec.torsion is not None:
            outcome.torsion = self._torsion()
        if self.spec.rank.conjugations and outcome.exact and independent == outcome.geometric:
            sigmas = [GaloisMap.power(self.surface.field, e) for e in self.spec.rank.conjugations]
            descent = galois_rank_over_q(self.pairing, generators, sigmas)
            outcome.rational = descent.rank
        self.rank = outcome
        report = MWReport(
            self.spec.name,
            outcome.geometric,
            outcome.rational,
            outcome.torsion,
            tuple(generators),
            inputs=outcome.inputs,
        )
        relation = "=" if outcome.exact else "<="
        summary = [f"geometric rank {relation} {outcome.geometric}"]
        if outcome.shioda_tate is not None:
            summary.append(f"shioda-tate: {outcome.shioda_tate}")
        summary.extend(report.lines())
        rows = tuple(
            (section.name, _fraction(self.pairing.height(section)), "generator")
            for section in generators
        ) + tuple(
            (section.name, "0", "torsion") for section in self.surface.torsion_sections()
        )
        data: dict[str, object] = {"geometric_rank": str(outcome.geometric)}
        if outcome.rational is not None:
            data["rational_rank"] = str(outcome.rational)
        return StageArtifact(
            "rank",
            f"{self.spec.name}: Mordell-Weil rank",
            ("section", "height", "role"),
            rows,
            tuple(summary),
            data,
        )

    def _rank(self, independent: int) -> RankOutcome:
        method = self.spec.rank.method
        invariants = self._invariants()
        if method is RankMethod.ADDITIVITY:
            record = self._additivity()
            if independent > record.rank:
                raise LatticeError(
                    f"inconsistent inputs: {independent} independent sections for rank "
                    f"{record.rank}"
                )
            return RankOutcome(record.rank, True, record, inputs=record.provenance)
        if method is RankMethod.RATIONAL:
            picard, exact, source = invariants.b2, True, "rho = b2 (rational surface)"
        elif method is RankMethod.HODGE:
            picard, exact, source = invariants.hodge_bound, False, "rho <= h11"
        else:
            if self.picard_number is None:
                raise StageError("rank", "missing_stage", "the picard stage did not run")
            picard, exact = self.picard_number, False
            source = f"rho <= {picard} ({method.value})"
        result = shioda_tate_rank(
            picard, invariants.trivial_rank, exact=exact, independent=independent
        )
        inputs = (source, f"{independent} independent generators")
        record = RankRecord(self.spec.name, result.rank, (f"{self.spec.name}: {result}",))
        return RankOutcome(result.rank, result.exact, record, result, inputs=inputs)

    def _torsion(self) -> TorsionGroup:
        torsion_spec = self.spec.torsion
        assert torsion_spec is not None
        bound = FiniteAbelianGroup(tuple(torsion_spec.bound)) if torsion_spec.bound else None
        torsion = torsion_subgroup(self.surface.model, bound)
        for section in self.surface.torsion_sections():
            if not torsion.contains(section):
                raise LatticeError(f"section {section.name} is not in the torsion subgroup")
        return torsion

    def _additivity(self) -> RankRecord:
        cover = self.spec.cover
        assert cover is not None
        children = []
        for reference in (cover.base, cover.twist):
            try:
                child_spec = load_spec(reference)
            except SpecError as exc:
                raise StageError("rank", "spec_error", str(exc)) from exc
            child = Pipeline(child_spec, self.settings)
            child.run("rank")
            assert child.rank is not None
            if not child.rank.exact:
                raise LatticeError(f"rank of {child_spec.name} is only bounded")
            self.dependencies[child_spec.name] = child_spec.spec_hash
            self.dependencies.update(child.dependencies)
            children.append(child)
        base, twist = children
        phi = parse_function(cover.phi, NumberField.rationals())
        certificate = certify_double_cover(
            base.surface.base, self.surface.base, twist.surface.base, phi
        )
        assert base.rank is not None and twist.rank is not None
        return twist_rank_additivity(
            base.rank.record, twist.rank.record, certificate, self.spec.name
        )

    def _stage_descent(self) -> StageArtifact:
        descent = self.spec.rank.descent
        assert descent is not None
        generators = self.surface.generators()
        gram = self._gram(generators)
        rank = self.rank.geometric if self.rank is not None else None
        index = gram_index_bound(gram, rank if rank == len(generators) else None)
        torsion = self.rank.torsion if self.rank is not None else None
        verdict = saturation_check(
            generators,
            self.surface.torsion_sections(),
            torsion.group if torsion is not None else None,
            descent.admissible,
            pair=descent.pair,
        )
        names = tuple(section.name for section in generators)
        rows = tuple(
            (name, *(_fraction(entry) for entry in row))
            for name, row in zip(names, gram.entries, strict=True)
        )
        summary = [
            f"gram determinant {index.determinant} (scale {gram.scale})",
            f"index divides {index.largest}",
            f"2-descent: {verdict.message}",
        ]
        unresolved = sorted(set(index.indices) - set(descent.admissible) - {1})
        if verdict.saturated and not unresolved:
            summary.append("generators span the Mordell-Weil lattice modulo torsion")
        elif unresolved:
            summary.append(f"indices not ruled out: {', '.join(map(str, unresolved))}")
        return StageArtifact(
            "descent",
            f"{self.spec.name}: index and saturation",
            ("section", *names),
            rows,
            tuple(summary),
            {"determinant": str(index.determinant), "saturated": str(verdict.saturated)},
        )


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PipelineResult:
    name: str
    command: str
    paths: tuple[Path, ...]
    artifacts: tuple[StageArtifact, ...]
    status: int = 0
    summary: tuple[str, ...] = field(default_factory=tuple)

    def artifact(self, stage: str) -> StageArtifact:
        for artifact in self.artifacts:
            if artifact.stage == stage:
                return artifact
        raise KeyError(stage)


def run_pipeline(
    spec: SurfaceSpec, command: str, settings: WorkbenchSettings | None = None
) -> PipelineResult:
    """Run ``command`` on ``spec``; writes one file per stage plus ``report``."""

    settings = settings or WorkbenchSettings()
    pipeline = Pipeline(spec, settings)
    artifacts = pipeline.run(command)
    directory = settings.report_dir / spec.slug
    suffix = settings.emit.suffix
    paths = [
        write_report(
            directory / f"{index:02d}-{artifact.stage}{suffix}",
            pipeline.provenance(index),
            [artifact],
            settings.emit,
        )
        for index, artifact in enumerate(artifacts, start=1)
    ]
    paths.append(
        write_report(directory / f"report{suffix}", pipeline.provenance(), artifacts, settings.emit)
    )
    summary = tuple(line for artifact in artifacts for line in artifact.summary)
    logger.info("%s %s: wrote %d files to %s", spec.name, command, len(paths), directory)
    return PipelineResult(spec.name, command, tuple(paths), tuple(artifacts), 0, summary)


def run_search(bound: int, settings: WorkbenchSettings | None = None) -> PipelineResult:
    """Pythagorean search over ``1 <= p, q <= bound``, one row per triple class."""

    settings = settings or WorkbenchSettings()
    if bound < 1:
        raise StageError("search", "value_error", f"search bound {bound} must be positive")
    try:
        report = search_report(range(1, bound + 1))
    except STAGE_FAILURES as exc:
        raise StageError("search", error_code(exc), str(exc)) from exc
    frame = report.frame().cast(pl.String)
    summary = [f"{len(report)} triple classes from {bound * bound} pairs"]
    summary.extend(
        f"degenerate at {row.witnesses[0]}: Q2 = +-Q1 + torsion" for row in report.degenerate()
    )
    artifact = StageArtifact(
        "search",
        f"pythagorean family, 1 <= p, q <= {bound}",
        tuple(frame.columns),
        tuple(tuple("" if cell is None else cell for cell in row) for row in frame.rows()),
        tuple(summary),
        {"classes": str(len(report)), "degenerate": str(len(report.degenerate()))},
    )
    digest = hashlib.blake2b(f"search:{bound}".encode(), digest_size=16).hexdigest()
    provenance = Provenance("pythagorean", digest, __version__, ("search",))
    path = write_report(
        settings.report_dir / "pythagorean" / f"search-{bound}{settings.emit.suffix}",
        provenance,
        [artifact],
        settings.emit,
    )
    return PipelineResult("pythagorean", "search", (path,), (artifact,), 0, tuple(summary))


__all__ = [
    "COMMANDS",
    "STAGES",
    "Pipeline",
    "PipelineResult",
    "StageError",
    "error_code",
    "factored",
    "run_pipeline",
    "run_search",
]
