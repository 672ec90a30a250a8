from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from ellsurf.counting import CountingSettings
from ellsurf.fields import ExtField, FieldTables, build_tables
from ellsurf.workbench import Pipeline, WorkbenchSettings, load_spec
import ellsurf.workbench.cache as cache_module
from ellsurf.workbench.cache import (
    CACHE_VERSION,
    QUARANTINE_SUFFIX,
    CacheIntegrityError,
    PrimeStore,
    TraceCache,
    audit_file,
    cache_ops,
    counters,
    decode_payload,
    encode_payload,
    read_payload,
    reset_counters,
)


def _count_first_twist(cache_dir: Path, tmp_path: Path) -> tuple[int, ...]:
    settings = WorkbenchSettings(cache_dir=cache_dir, report_dir=tmp_path / "reports")
    pipeline = Pipeline(load_spec("E1'"), settings)
    pipeline.run("count")
    vector = pipeline.primes[17].vector
    assert vector is not None
    return vector.counts


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def test_payload_digest_detects_tampering(tmp_path: Path) -> None:
    path = tmp_path / "p17-d1.msgpack.zst"
    blob = encode_payload({"version": CACHE_VERSION, "p": 17, "traces": [[0, 2], [1, None]]})
    assert decode_payload(path, blob)["traces"] == [[0, 2], [1, None]]
    tampered = bytes([blob[0] ^ 0xFF]) + blob[1:]
    with pytest.raises(CacheIntegrityError, match="digest mismatch"):
        decode_payload(path, tampered)
    with pytest.raises(CacheIntegrityError, match="digest mismatch"):
        decode_payload(path, blob[:4])
    with pytest.raises(CacheIntegrityError, match="unknown payload version"):
        decode_payload(path, encode_payload({"version": CACHE_VERSION + 1}))


def test_bad_files_are_quarantined(tmp_path: Path) -> None:
    store = PrimeStore(tmp_path, 17)
    store.save(1, {0: 4, 1: None}, {"p": 17, "degree": 1, "modulus": [1, 0]})
    assert store.load(1) == {0: 4, 1: None}
    path = store.path(1)
    blob = path.read_bytes()
    path.write_bytes(blob[:-1] + bytes([blob[-1] ^ 0x01]))
    with pytest.raises(CacheIntegrityError):
        read_payload(path)
    assert not path.exists()
    assert path.with_name(path.name + QUARANTINE_SUFFIX).exists()


def test_corrupt_entry_is_recomputed_not_reused(tmp_path: Path) -> None:
    store = PrimeStore(tmp_path, 17)
    store.save(2, {5: 1}, {"p": 17, "degree": 2, "modulus": [1, 0, 3]})
    store.path(2).write_bytes(b"garbage" * 8)
    reset_counters()
    assert store.load(2) is None
    assert counters() == {"hits": 0, "misses": 1}
    assert store.path(2).with_name(store.path(2).name + QUARANTINE_SUFFIX).exists()


def test_wrong_prime_payload_is_rejected(tmp_path: Path) -> None:
    PrimeStore(tmp_path, 19).save(1, {0: 3}, {"p": 19, "degree": 1, "modulus": [1, 0]})
    PrimeStore(tmp_path, 19).path(1).rename(PrimeStore(tmp_path, 17).path(1))
    assert PrimeStore(tmp_path, 17).load(1) is None


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def test_stats_count_every_closed_point(tmp_path: Path) -> None:
    cache_dir = tmp_path / "cache"
    reset_counters()
    assert _count_first_twist(cache_dir, tmp_path) == (604, 88312)
    status = cache_ops("stats", cache_dir)
    # 18 rational points of P^1(F_17) and 136 closed points of degree 2
    assert status.files == 2
    assert status.entries == 18 + 136
    assert status.misses == 2 and status.hits == 0
    assert status.ok
    assert "entries: 154" in status.lines()


def test_second_run_hits_the_cache(tmp_path: Path) -> None:
    cache_dir = tmp_path / "cache"
    first = _count_first_twist(cache_dir, tmp_path)
    reset_counters()
    assert _count_first_twist(cache_dir, tmp_path) == first
    assert counters() == {"hits": 2, "misses": 0}


def test_audit_on_a_fresh_cache_passes(tmp_path: Path) -> None:
    cache_dir = tmp_path / "cache"
    _count_first_twist(cache_dir, tmp_path)
    status = cache_ops("audit", cache_dir, fraction=0.05, seed=7)
    assert status.ok, status.failures
    # at least one entry per file: ceil(0.05 * 18) + ceil(0.05 * 136)
    assert status.audited == 1 + 7
    full = cache_ops("audit", cache_dir, fraction=1.0)
    assert full.ok and full.audited == 154


def test_audit_flags_a_wrong_trace(tmp_path: Path) -> None:
    cache_dir = tmp_path / "cache"
    _count_first_twist(cache_dir, tmp_path)
    path = next(p for p in TraceCache(cache_dir).files() if p.name.endswith("-d1.msgpack.zst"))
    payload = read_payload(path)
    key, trace = next((k, t) for k, t in payload["traces"] if t is not None)
    payload["traces"] = [[k, trace + 2 if k == key else t] for k, t in payload["traces"]]
    path.write_bytes(encode_payload(payload))
    status = cache_ops("audit", cache_dir, fraction=1.0)
    assert not status.ok
    assert any(f"point {key} stored {trace + 2}" in failure for failure in status.failures)


def test_audit_builds_field_tables_once_per_file(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    cache_dir = tmp_path / "cache"
    _count_first_twist(cache_dir, tmp_path)
    path = next(p for p in TraceCache(cache_dir).files() if p.name.endswith("-d2.msgpack.zst"))
    built: list[ExtField] = []

    def counting_build(field: ExtField) -> FieldTables:
        built.append(field)
        return build_tables(field)

    monkeypatch.setattr(cache_module, "build_tables", counting_build)
    checked, failures = audit_file(path, 1.0, np.random.default_rng(0), CountingSettings())
    assert (checked, failures) == (136, [])
    assert len(built) == 1


def test_clear_then_recount_matches(tmp_path: Path) -> None:
    cache_dir = tmp_path / "cache"
    first = _count_first_twist(cache_dir, tmp_path)
    cache_ops("clear", cache_dir)
    assert list(TraceCache(cache_dir).files()) == []
    assert cache_ops("stats", cache_dir).entries == 0
    assert _count_first_twist(cache_dir, tmp_path) == first
    with pytest.raises(ValueError, match="unknown cache action"):
        cache_ops("vacuum", cache_dir)
