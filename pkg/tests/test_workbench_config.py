from pathlib import Path
import json
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from pydantic import ValidationError

from ellsurf.counting import Strategy
from ellsurf.workbench import (
    Emit,
    RankMethod,
    SpecError,
    SurfaceSpec,
    WorkbenchSettings,
    build_surface,
    expected_values,
    fixture_names,
    load_spec,
)


def _document(**changes: object) -> dict[str, object]:
    document: dict[str, object] = {
        "name": "E1'",
        "model": {"form": "factored", "roots": ["(t-1)^2", "4*t"], "twist": "1-5*t"},
        "reduction": {"primes": [17], "depth": 2},
        "rank": {"method": "picard"},
    }
    document.update(changes)
    return document


# ---------------------------------------------------------------------------
# Settings
# ---------------------------------------------------------------------------


def test_workbench_settings_defaults(tmp_path: Path) -> None:
    settings = WorkbenchSettings(cache_dir=tmp_path)
    assert settings.emit is Emit.TEXT
    assert settings.resolved_cache_dir() == tmp_path
    counting = settings.counting()
    assert counting.threads == 1
    assert counting.strategy is Strategy.AUTO
    assert [emit.suffix for emit in Emit] == [".txt", ".csv", ".json"]


def test_workbench_settings_reject_bad_values() -> None:
    with pytest.raises(ValidationError):
        WorkbenchSettings(threads=0)
    with pytest.raises(ValidationError):
        WorkbenchSettings(audit_fraction=0.0)
    with pytest.raises(ValidationError):
        WorkbenchSettings(colour=True)  # type: ignore[call-arg]


# ---------------------------------------------------------------------------
# Surface documents
# ---------------------------------------------------------------------------


def test_shipped_surfaces_validate() -> None:
    assert sorted(fixture_names()) == ["E1", "E1'", "E1''", "E2", "E2'", "E3"]
    for name in fixture_names():
        spec = load_spec(name)
        assert spec.name == name
        assert load_spec(spec.slug) == spec
    assert load_spec("e1pp").rank.method is RankMethod.ARTIN_TATE
    assert load_spec("E3").cover is not None


def test_expected_values_are_shipped_for_every_surface() -> None:
    for name in fixture_names():
        assert "rank" in expected_values(name)
    assert expected_values("E1'")["picard"] == {"bound": "18"}
    with pytest.raises(SpecError, match="not a shipped surface"):
        expected_values("E4")


def test_hashes_and_overrides() -> None:
    spec = load_spec("E1'")
    assert spec.spec_hash == load_spec("e1p").spec_hash
    assert len(spec.spec_hash) == 32
    deeper = spec.with_overrides(depth=4)
    assert deeper.reduction is not None and deeper.reduction.depth == 4
    assert deeper.spec_hash != spec.spec_hash
    assert deeper.model_hash == spec.model_hash
    assert spec.with_overrides() is spec
    with pytest.raises(ValueError, match="declares no reduction"):
        load_spec("E1").with_overrides(primes=[17])


def test_document_validation() -> None:
    assert SurfaceSpec.model_validate(_document()).name == "E1'"
    with pytest.raises(ValidationError, match="characteristic at least 5"):
        SurfaceSpec.model_validate(_document(reduction={"primes": [3]}))
    with pytest.raises(ValidationError, match="need two primes"):
        SurfaceSpec.model_validate(_document(rank={"method": "artin-tate"}))
    with pytest.raises(ValidationError, match="undeclared sections"):
        SurfaceSpec.model_validate(_document(rank={"method": "picard", "generators": ["P"]}))
    with pytest.raises(ValidationError, match="needs a cover block"):
        SurfaceSpec.model_validate(_document(rank={"method": "additivity"}))
    with pytest.raises(ValidationError, match="two roots"):
        SurfaceSpec.model_validate(_document(model={"form": "factored", "roots": ["t"]}))
    with pytest.raises(ValidationError):
        SurfaceSpec.model_validate(_document(colour="red"))


def test_load_spec_errors(tmp_path: Path) -> None:
    with pytest.raises(SpecError, match="no surface document"):
        load_spec("E4")
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(SpecError, match="broken.json"):
        load_spec(broken)
    invalid = tmp_path / "invalid.json"
    invalid.write_text(json.dumps(_document(reduction={"primes": [4]})), encoding="utf-8")
    with pytest.raises(SpecError, match="invalid.json"):
        load_spec(invalid)


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------


def test_build_surface_over_the_eighth_cyclotomic_field() -> None:
    surface = build_surface(load_spec("E2"))
    assert surface.rational is not None
    assert surface.base is surface.rational
    assert [section.name for section in surface.generators()] == ["P1", "P2"]
    assert [section.name for section in surface.torsion_sections()] == ["T1", "T2"]
    assert not surface.field.is_rational


def test_build_surface_checks_declared_places() -> None:
    spec = SurfaceSpec.model_validate(_document(places=["t^2-6*t+1", "oo"]))
    assert len(build_surface(spec).places) == 1
    with pytest.raises(SpecError, match="does not divide the discriminant"):
        build_surface(SurfaceSpec.model_validate(_document(places=["t+7"])))


def test_build_surface_rejects_points_off_the_curve() -> None:
    document = _document(sections=[{"name": "bad", "x": "t", "y": "t"}])
    with pytest.raises(SpecError, match="bad"):
        build_surface(SurfaceSpec.model_validate(document))
    with pytest.raises(SpecError):
        build_surface(SurfaceSpec.model_validate(_document(model={"roots": ["w*t", "t"]})))
