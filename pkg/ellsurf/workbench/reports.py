"""Render stage artifacts as text tables, CSV or JSON.

Every file starts with the provenance block: document name and hash,
package version, the chain of stages that produced it and the hashes of
the documents it depends on.  Nothing time- or machine-dependent is
written, so a rerun on the same inputs reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path

import polars as pl
from polars._typing import PolarsDataType
from rich import box
from rich.console import Console
from rich.table import Table

from .config import Emit

REPORT_WIDTH = 100


@dataclass(frozen=True, slots=True)
class Provenance:
    name: str
    spec_hash: str
    version: str
    stages: tuple[str, ...]
    dependencies: tuple[tuple[str, str], ...] = ()

    def as_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "spec_hash": self.spec_hash,
            "version": self.version,
            "stages": list(self.stages),
            "dependencies": {name: digest for name, digest in self.dependencies},
        }

    def lines(self) -> list[str]:
        out = [
            f"surface: {self.name}",
            f"spec_hash: {self.spec_hash}",
            f"version: {self.version}",
            f"stages: {' > '.join(self.stages)}",
        ]
        out.extend(f"depends: {name} {digest}" for name, digest in self.dependencies)
        return out


@dataclass(frozen=True, slots=True)
class StageArtifact:
    """Rows and summary lines of one stage; every cell is an exact string."""

    stage: str
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...] = ()
    summary: tuple[str, ...] = ()
    data: Mapping[str, object] = field(default_factory=dict)

    def schema(self) -> dict[str, PolarsDataType]:
        return {column: pl.String for column in self.columns}

    def frame(self) -> pl.DataFrame:
        if not self.rows:
            return pl.DataFrame(schema=self.schema())
        return pl.DataFrame(list(self.rows), schema=self.schema(), orient="row")

    def records(self) -> list[dict[str, str]]:
        return [dict(zip(self.columns, row, strict=True)) for row in self.rows]

    def table(self) -> Table:
        table = Table(title=self.title, box=box.SIMPLE_HEAVY, title_justify="left")
        for column in self.columns:
            table.add_column(column, overflow="fold")
        for row in self.rows:
            table.add_row(*row)
        return table


def _console_text(*renderables: object) -> str:
    buffer = StringIO()
    console = Console(
        file=buffer,
        width=REPORT_WIDTH,
        color_system=None,
        force_terminal=False,
        no_color=True,
        highlight=False,
        emoji=False,
    )
    for renderable in renderables:
        console.print(renderable)
    return buffer.getvalue()


def _text(provenance: Provenance, artifacts: Sequence[StageArtifact]) -> str:
    parts = ["\n".join(f"# {line}" for line in provenance.lines()), ""]
    for artifact in artifacts:
        if artifact.columns:
            parts.append(_console_text(artifact.table()).rstrip("\n"))
        else:
            parts.append(artifact.title)
        parts.extend(artifact.summary)
        parts.append("")
    return "\n".join(parts)


def _csv(provenance: Provenance, artifacts: Sequence[StageArtifact]) -> str:
    header = "".join(f"# {line}\n" for line in provenance.lines())
    if len(artifacts) == 1 and artifacts[0].columns:
        artifact = artifacts[0]
        notes = "".join(f"# {line}\n" for line in artifact.summary)
        return header + notes + artifact.frame().write_csv()
    summary = pl.DataFrame(
        [(artifact.stage, line) for artifact in artifacts for line in artifact.summary],
        schema={"stage": pl.String, "summary": pl.String},
        orient="row",
    )
    return header + summary.write_csv()


def _json(provenance: Provenance, artifacts: Sequence[StageArtifact]) -> str:
    document = {
        "provenance": provenance.as_dict(),
        "stages": [
            {
                "stage": artifact.stage,
                "title": artifact.title,
                "rows": artifact.records(),
                "summary": list(artifact.summary),
                "data": dict(artifact.data),
            }
            for artifact in artifacts
        ],
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def render(provenance: Provenance, artifacts: Sequence[StageArtifact], emit: Emit) -> str:
    if emit is Emit.CSV:
        return _csv(provenance, artifacts)
    if emit is Emit.JSON:
        return _json(provenance, artifacts)
    return _text(provenance, artifacts)


def write_report(
    path: Path, provenance: Provenance, artifacts: Sequence[StageArtifact], emit: Emit
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    temporary = path.with_name(path.name + ".tmp")
    temporary.write_text(render(provenance, artifacts, emit), encoding="utf-8")
    temporary.replace(path)
    return path


__all__ = ["Provenance", "REPORT_WIDTH", "StageArtifact", "render", "write_report"]
