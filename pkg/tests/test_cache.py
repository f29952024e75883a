import json

import pytest

from paradelta.cache import DeltaCache, DeltaKey, resolve_cache_dir
from paradelta.exactpoly import BivariatePolynomial, IntegerPolynomial

POLY = BivariatePolynomial({(1, 0): 1, (0, 1): -1, (0, 0): -4}, ("x", "C"))


def test_filenames():
    assert DeltaKey("multiplier", (4,)).filename == "delta_m4.v1.json"
    assert DeltaKey("delta_factor", (6, 3)).filename == "deltafactor_n6_m3.v1.json"


def test_delta_factor_key_requires_divisor():
    with pytest.raises(ValueError):
        DeltaKey("delta_factor", (6, 4))


def test_roundtrip(tmp_path):
    key = DeltaKey("multiplier", (2,))
    DeltaCache(tmp_path).store(key, POLY)
    assert DeltaCache(tmp_path).load(key) == POLY
    record = json.loads((tmp_path / key.filename).read_text())
    assert set(record) == {"key", "digest", "poly"}


def test_corrupted_entry_is_recomputed(tmp_path):
    key = DeltaKey("multiplier", (2,))
    DeltaCache(tmp_path).store(key, POLY)
    path = tmp_path / key.filename
    record = json.loads(path.read_text())
    record["poly"]["terms"][0][2] = "7"
    path.write_text(json.dumps(record))
    calls = []
    got = DeltaCache(tmp_path).get_or_compute(key, lambda: calls.append(1) or POLY)
    assert got == POLY and calls == [1]


def test_validator_rejects(tmp_path):
    key = DeltaKey("delta_factor", (3, 3))
    DeltaCache(tmp_path).store(key, IntegerPolynomial([7, 1], "C"))
    assert DeltaCache(tmp_path).load(key, lambda p: p.degree == 5) is None


def test_resolution_order(monkeypatch, tmp_path):
    monkeypatch.setenv("PARADELTA_CACHE", str(tmp_path / "env"))
    assert resolve_cache_dir(tmp_path / "flag") == tmp_path / "flag"
    assert resolve_cache_dir(None) == tmp_path / "env"
    monkeypatch.delenv("PARADELTA_CACHE")
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "xdg"))
    assert resolve_cache_dir(None) == tmp_path / "xdg" / "paradelta"


def test_memory_only():
    cache = DeltaCache(None)
    key = DeltaKey("gamma", (2,))
    assert cache.get_or_compute(key, lambda: POLY) == POLY
    assert cache.load(key) == POLY
