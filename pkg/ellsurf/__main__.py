"""Command line entry point: ``ellsurf run``, ``ellsurf cache`` and ``ellsurf search``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from .counting import Strategy
from .workbench.cache import cache_ops
from .workbench.config import Emit, WorkbenchSettings
from .workbench.pipeline import COMMANDS, StageError, run_pipeline, run_search
from .workbench.surfaces import SpecError, load_spec

CACHE_ACTIONS = ("audit", "clear", "stats")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, default=1, help="Counting worker threads")
    parser.add_argument(
        "--strategy",
        choices=[strategy.value for strategy in Strategy],
        default=Strategy.AUTO.value,
        help="Trace computation for good fibers",
    )
    parser.add_argument("--cache-dir", type=Path, default=None, help="Trace cache directory")
    parser.add_argument(
        "--emit", choices=[emit.value for emit in Emit], default=Emit.TEXT.value, help="Format"
    )
    parser.add_argument("--report-dir", type=Path, default=Path("reports"), help="Report root")
    parser.add_argument("--verbose", action="store_true", help="Log stage boundaries")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellsurf", description="Mordell-Weil rank bounds through elliptic surfaces."
    )
    commands = parser.add_subparsers(dest="action", required=True)

    run = commands.add_parser("run", help="Run a stage chain on a surface document")
    run.add_argument("command", choices=COMMANDS)
    run.add_argument("--spec", required=True, help="Fixture name (E1') or path to a document")
    run.add_argument(
        "--prime", type=int, action="append", default=None, help="Prime of reduction (repeatable)"
    )
    run.add_argument("--depth", type=int, default=None, help="Counting depth M")
    run.add_argument("--no-cache", action="store_true", help="Count without the trace cache")
    _common(run)

    cache = commands.add_parser("cache", help="Inspect or clear the trace cache")
    cache.add_argument("cache_action", choices=CACHE_ACTIONS)
    cache.add_argument("--fraction", type=float, default=0.01, help="Audited share per file")
    cache.add_argument("--seed", type=int, default=0, help="Audit sample seed")
    _common(cache)

    search = commands.add_parser("search", help="Pythagorean family over 1 <= p, q <= bound")
    search.add_argument("--bound", type=int, default=6)
    _common(search)
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_time=False, show_path=False)],
        force=True,
    )


def _settings(args: argparse.Namespace) -> WorkbenchSettings:
    extra = {"audit_fraction": args.fraction, "audit_seed": args.seed} if "fraction" in args else {}
    return WorkbenchSettings(
        cache_dir=args.cache_dir,
        use_cache=not getattr(args, "no_cache", False),
        report_dir=args.report_dir,
        emit=Emit(args.emit),
        threads=args.threads,
        strategy=Strategy(args.strategy),
        **extra,
    )


def _diagnostic(stage: str, error: str, message: str) -> int:
    print(json.dumps({"stage": stage, "error": error, "message": message}, sort_keys=True))
    return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    console = Console(highlight=False)
    try:
        settings = _settings(args)
    except ValidationError as exc:
        return _diagnostic("settings", "validation_error", str(exc))

    if args.action == "cache":
        status = cache_ops(
            args.cache_action,
            settings.resolved_cache_dir(),
            fraction=settings.audit_fraction,
            seed=settings.audit_seed,
            settings=settings.counting(),
        )
        for line in status.lines():
            console.print(line, markup=False)
        return 0 if status.ok else 1

    try:
        if args.action == "search":
            result = run_search(args.bound, settings)
        else:
            spec = load_spec(args.spec).with_overrides(args.prime, args.depth)
            result = run_pipeline(spec, args.command, settings)
    except StageError as exc:
        return _diagnostic(exc.stage, exc.error, exc.message)
    except (SpecError, ValueError) as exc:
        return _diagnostic("spec", "spec_error", str(exc))

    for line in result.summary:
        console.print(line, markup=False)
    console.print(f"wrote {len(result.paths)} report files under {result.paths[-1].parent}")
    return result.status


if __name__ == "__main__":  # pragma: no cover - module entry point
    sys.exit(main())
