"""Surface documents, the stage pipeline, the trace cache and report files."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .config import (
    CoverSpec,
    DescentSpec,
    Emit,
    FieldSpec,
    ModelSpec,
    RankMethod,
    RankSpec,
    ReductionSpec,
    SectionSpec,
    SurfaceSpec,
    TorsionSpec,
    WorkbenchSettings,
)

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .cache import CacheIntegrityError, CacheStatus, TraceCache, cache_ops
    from .pipeline import (
        COMMANDS,
        STAGES,
        Pipeline,
        PipelineResult,
        StageError,
        run_pipeline,
        run_search,
    )
    from .reports import Provenance, StageArtifact, render
    from .surfaces import (
        SpecError,
        Surface,
        build_surface,
        expected_values,
        fixture_names,
        load_spec,
    )

__all__ = [
    "COMMANDS",
    "STAGES",
    "CacheIntegrityError",
    "CacheStatus",
    "CoverSpec",
    "DescentSpec",
    "Emit",
    "FieldSpec",
    "ModelSpec",
    "Pipeline",
    "PipelineResult",
    "Provenance",
    "RankMethod",
    "RankSpec",
    "ReductionSpec",
    "SectionSpec",
    "SpecError",
    "StageArtifact",
    "StageError",
    "Surface",
    "SurfaceSpec",
    "TorsionSpec",
    "TraceCache",
    "WorkbenchSettings",
    "build_surface",
    "cache_ops",
    "expected_values",
    "fixture_names",
    "load_spec",
    "render",
    "run_pipeline",
    "run_search",
]

_LAZY_EXPORTS = {
    "CacheIntegrityError": ".cache",
    "CacheStatus": ".cache",
    "TraceCache": ".cache",
    "cache_ops": ".cache",
    "COMMANDS": ".pipeline",
    "STAGES": ".pipeline",
    "Pipeline": ".pipeline",
    "PipelineResult": ".pipeline",
    "StageError": ".pipeline",
    "run_pipeline": ".pipeline",
    "run_search": ".pipeline",
    "Provenance": ".reports",
    "StageArtifact": ".reports",
    "render": ".reports",
    "SpecError": ".surfaces",
    "Surface": ".surfaces",
    "build_surface": ".surfaces",
    "expected_values": ".surfaces",
    "fixture_names": ".surfaces",
    "load_spec": ".surfaces",
}


def __getattr__(name: str) -> Any:
    module_name = _LAZY_EXPORTS.get(name)
    if module_name is not None:
        module = import_module(module_name, __name__)
        value = getattr(module, name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__() -> list[str]:  # pragma: no cover - trivial
    return sorted(list(globals().keys()) + list(_LAZY_EXPORTS))
