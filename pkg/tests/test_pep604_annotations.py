from __future__ import annotations

import re
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def _iter_python_files() -> list[Path]:
    roots = [ROOT / "ellsurf", ROOT / "tests"]
    files: list[Path] = []
    for root in roots:
        for path in root.rglob("*.py"):
            if path.name == Path(__file__).name:
                continue
            files.append(path)
    return files


def test_no_typing_optional_usage() -> None:
    disallowed_patterns = [
        re.compile(r"\bOptional\["),
        re.compile(r"\btyping\.Optional\b"),
        re.compile(r"\bUnion\[[^\]]*\bNone\b"),
    ]
    offending: dict[str, list[str]] = {}
    for path in _iter_python_files():
        text = path.read_text(encoding="utf-8")
        matches = [pattern.pattern for pattern in disallowed_patterns if pattern.search(text)]
        if matches:
            offending[str(path)] = matches
    assert not offending, f"PEP 604 violations detected: {offending}"


def test_no_legacy_generic_aliases() -> None:
    legacy = re.compile(r"\b(?:List|Dict|Tuple|Set|FrozenSet)\[")
    offending = [
        str(path)
        for path in _iter_python_files()
        if legacy.search(path.read_text(encoding="utf-8"))
    ]
    assert not offending, f"typing aliases instead of builtin generics: {offending}"


def test_package_modules_postpone_annotations() -> None:
    missing = [
        str(path)
        for path in (ROOT / "ellsurf").rglob("*.py")
        if path.name != "__init__.py"
        and "from __future__ import annotations" not in path.read_text(encoding="utf-8")
    ]
    assert not missing, f"modules without postponed annotations: {missing}"
