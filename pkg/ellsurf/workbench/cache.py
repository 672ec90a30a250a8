"""On-disk trace cache keyed by model, prime and closed-point degree.

Each file is ``<root>/traces/<model hash>/p<p>-d<degree>.msgpack.zst``: a
zstd frame holding the msgpack payload, followed by the 16-byte blake2b
digest of that frame.  Writes go to a temporary sibling and are moved into
place under a process-wide lock.
"""

from __future__ import annotations

import hashlib
import logging
import math
import shutil
import threading
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import msgpack
import numpy as np
import zstandard

from ..counting import CountingSettings
from ..counting.engine import INFINITY_KEY, TraceMap
from ..counting.traces import FiberCurve, fiber_trace
from ..fields import ExtField, FieldTables, build_tables

logger = logging.getLogger(__name__)

CACHE_VERSION = 1
DIGEST_SIZE = 16
SUFFIX = ".msgpack.zst"
QUARANTINE_SUFFIX = ".quarantined"

_WRITE_LOCK = threading.Lock()
_COUNTERS = {"hits": 0, "misses": 0}


class CacheIntegrityError(RuntimeError):
    """Raised when a cache file fails its digest or does not decode."""

    def __init__(self, path: Path, reason: str) -> None:
        super().__init__(f"{path.name}: {reason}")
        self.path = path
        self.reason = reason


def _digest(frame: bytes) -> bytes:
    return hashlib.blake2b(frame, digest_size=DIGEST_SIZE).digest()


def encode_payload(payload: Mapping[str, Any]) -> bytes:
    frame = zstandard.ZstdCompressor(level=10).compress(
        msgpack.packb(dict(payload), use_bin_type=True)
    )
    return frame + _digest(frame)


def decode_payload(path: Path, blob: bytes) -> dict[str, Any]:
    frame, digest = blob[:-DIGEST_SIZE], blob[-DIGEST_SIZE:]
    if len(blob) <= DIGEST_SIZE or _digest(frame) != digest:
        raise CacheIntegrityError(path, "digest mismatch")
    try:
        payload = msgpack.unpackb(
            zstandard.ZstdDecompressor().decompress(frame), raw=False, strict_map_key=False
        )
    except (zstandard.ZstdError, ValueError) as exc:
        raise CacheIntegrityError(path, f"undecodable payload ({exc})") from exc
    if not isinstance(payload, dict) or payload.get("version") != CACHE_VERSION:
        raise CacheIntegrityError(path, "unknown payload version")
    return payload


def quarantine(path: Path) -> Path:
    """Move a bad file aside so the next run recomputes it."""

    target = path.with_name(path.name + QUARANTINE_SUFFIX)
    with _WRITE_LOCK:
        path.replace(target)
    logger.warning("quarantined %s", path)
    return target


def read_payload(path: Path) -> dict[str, Any]:
    try:
        return decode_payload(path, path.read_bytes())
    except CacheIntegrityError:
        quarantine(path)
        raise


def write_payload(path: Path, payload: Mapping[str, Any]) -> None:
    blob = encode_payload(payload)
    path.parent.mkdir(parents=True, exist_ok=True)
    temporary = path.with_name(path.name + ".tmp")
    with _WRITE_LOCK:
        temporary.write_bytes(blob)
        temporary.replace(path)


def traces_of(payload: Mapping[str, Any]) -> TraceMap:
    return {int(key): None if trace is None else int(trace) for key, trace in payload["traces"]}


# ---------------------------------------------------------------------------
# Store
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class PrimeStore:
    """Trace maps of one reduced model, one file per closed-point degree."""

    directory: Path
    p: int

    def path(self, degree: int) -> Path:
        return self.directory / f"p{self.p}-d{degree}{SUFFIX}"

    def load(self, degree: int) -> TraceMap | None:
        path = self.path(degree)
        if not path.is_file():
            _COUNTERS["misses"] += 1
            return None
        try:
            payload = read_payload(path)
            if payload["p"] != self.p or payload["degree"] != degree:
                quarantine(path)
                raise CacheIntegrityError(path, "payload is for another prime or degree")
        except CacheIntegrityError as exc:
            # the bad file is already quarantined; count afresh
            logger.warning("recomputing degree %d at p=%d: %s", degree, self.p, exc)
            _COUNTERS["misses"] += 1
            return None
        _COUNTERS["hits"] += 1
        logger.debug("cache hit %s", path)
        return traces_of(payload)

    def save(
        self, degree: int, traces: Mapping[int, int | None], presentation: dict[str, Any]
    ) -> None:
        payload = {"version": CACHE_VERSION, **presentation}
        payload["traces"] = [[key, traces[key]] for key in sorted(traces)]
        write_payload(self.path(degree), payload)
        logger.debug("cached %d traces in %s", len(traces), self.path(degree))


@dataclass(slots=True)
class TraceCache:
    root: Path

    @property
    def traces_dir(self) -> Path:
        return self.root / "traces"

    def store(self, model_hash: str, p: int) -> PrimeStore:
        return PrimeStore(self.traces_dir / model_hash, p)

    def files(self) -> Iterator[Path]:
        if self.traces_dir.is_dir():
            yield from sorted(self.traces_dir.glob(f"*/*{SUFFIX}"))

    def quarantined(self) -> list[Path]:
        if not self.traces_dir.is_dir():
            return []
        return sorted(self.traces_dir.glob(f"*/*{QUARANTINE_SUFFIX}"))

    def clear(self) -> int:
        removed = len(list(self.files())) + len(self.quarantined())
        if self.traces_dir.is_dir():
            with _WRITE_LOCK:
                shutil.rmtree(self.traces_dir)
        logger.info("cleared %d cache files under %s", removed, self.root)
        return removed


def counters() -> dict[str, int]:
    return dict(_COUNTERS)


def reset_counters() -> None:
    _COUNTERS.update(hits=0, misses=0)


# ---------------------------------------------------------------------------
# Audit
# ---------------------------------------------------------------------------


def _discriminant_vanishes(tables: FieldTables, a: int, b: int) -> bool:
    p = tables.field.p
    cubes = tables.mul(4 % p, tables.power(np.array([a]), 3))
    squares = tables.mul(27 % p, tables.power(np.array([b]), 2))
    return int(tables.add(cubes, squares)[0]) == 0


def _fiber_coefficients(
    payload: Mapping[str, Any], tables: FieldTables, key: int
) -> tuple[int, int]:
    if key == INFINITY_KEY:
        a, b = payload["infinity"]
        return tables.field.embed(a), tables.field.embed(b)
    point = np.array([key])
    a = tables.evaluate(list(payload["a"]), point)
    b = tables.evaluate(list(payload["b"]), point)
    return int(a[0]), int(b[0])


def audit_file(
    path: Path, fraction: float, rng: np.random.Generator, settings: CountingSettings
) -> tuple[int, list[str]]:
    """Recompute a sample of one file; returns ``(checked, failures)``."""

    payload = read_payload(path)
    field_ = ExtField(int(payload["p"]), int(payload["degree"]), tuple(payload["modulus"]))
    traces = traces_of(payload)
    keys = sorted(traces)
    size = min(len(keys), max(1, math.ceil(fraction * len(keys))))
    sample = sorted(int(k) for k in rng.choice(np.array(keys), size=size, replace=False))
    tables = build_tables(field_)
    failures = []
    for key in sample:
        a, b = _fiber_coefficients(payload, tables, key)
        stored = traces[key]
        if stored is None:
            if not _discriminant_vanishes(tables, a, b):
                failures.append(f"{path.name}: point {key} marked singular but smooth")
            continue
        trace = fiber_trace(FiberCurve.short(field_, a, b), settings, salt=key)
        if trace != stored:
            failures.append(f"{path.name}: point {key} stored {stored}, recomputed {trace}")
    return len(sample), failures


@dataclass(slots=True)
class CacheStatus:
    files: int = 0
    entries: int = 0
    bytes: int = 0
    hits: int = 0
    misses: int = 0
    audited: int = 0
    failures: list[str] = field(default_factory=list)
    quarantined: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [
            f"files: {self.files}",
            f"entries: {self.entries}",
            f"bytes: {self.bytes}",
            f"hits: {self.hits}",
            f"misses: {self.misses}",
            f"quarantined: {self.quarantined}",
        ]
        if self.audited:
            out.append(f"audited: {self.audited}")
        out.extend(f"FAIL {failure}" for failure in self.failures)
        return out


def cache_ops(
    action: str,
    root: Path,
    *,
    fraction: float = 0.01,
    seed: int = 0,
    settings: CountingSettings | None = None,
) -> CacheStatus:
    """``stats``, ``audit`` or ``clear`` on the cache under ``root``."""

    cache = TraceCache(root)
    if action == "clear":
        cache.clear()
        return CacheStatus(**counters())
    if action not in ("stats", "audit"):
        raise ValueError(f"unknown cache action {action!r}")
    status = CacheStatus(**counters())
    rng = np.random.default_rng(seed)
    for path in cache.files():
        try:
            payload = read_payload(path)
        except CacheIntegrityError as exc:
            status.failures.append(str(exc))
            continue
        status.files += 1
        status.entries += len(payload["traces"])
        status.bytes += path.stat().st_size
        if action == "audit":
            checked, failures = audit_file(path, fraction, rng, settings or CountingSettings())
            status.audited += checked
            status.failures.extend(failures)
    status.quarantined = len(cache.quarantined())
    logger.info("cache %s: %d files, %d entries", action, status.files, status.entries)
    return status


__all__ = [
    "CACHE_VERSION",
    "CacheIntegrityError",
    "CacheStatus",
    "PrimeStore",
    "QUARANTINE_SUFFIX",
    "TraceCache",
    "audit_file",
    "cache_ops",
    "counters",
    "decode_payload",
    "encode_payload",
    "quarantine",
    "read_payload",
    "reset_counters",
]
