"""On-disk cache for expensive polynomials (one JSON file per key)."""

from __future__ import annotations

import json
import logging
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .exactpoly import serialize

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
ENV_VAR = "PARADELTA_CACHE"

KINDS = ("iterate", "dynatomic", "multiplier", "delta_factor", "gamma")


@dataclass(frozen=True)
class DeltaKey:
    kind: str
    indices: tuple[int, ...]
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "delta_factor":
            n, m = self.indices
            if n % m:
                raise ValueError(f"delta factor needs m | n, got n={n}, m={m}")

    @property
    def filename(self) -> str:
        if self.kind == "multiplier":
            stem = f"delta_m{self.indices[0]}"
        elif self.kind == "delta_factor":
            stem = "deltafactor_n{}_m{}".format(*self.indices)
        else:
            stem = f"{self.kind}_" + "_".join(str(i) for i in self.indices)
        return f"{stem}.v{self.format_version}.json"

    def as_json(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices),
                "format_version": self.format_version}


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "paradelta"


def resolve_cache_dir(flag: str | os.PathLike | None = None) -> Path:
    """Flag, then $PARADELTA_CACHE, then the per-user default."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return default_cache_dir()


class DeltaCache:
    """Polynomial store addressed by DeltaKey.

    Entries are published with write-to-temp + atomic rename, so a reader
    never sees a partial file.  ``directory=None`` keeps everything in memory.
    """

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory is not None else None
        self._memory: dict[DeltaKey, object] = {}
        self._lock = threading.Lock()

    def path(self, key: DeltaKey) -> Path | None:
        return self.directory / key.filename if self.directory is not None else None

    def load(self, key: DeltaKey, validate: Callable[[object], bool] | None = None):
        with self._lock:
            if key in self._memory:
                return self._memory[key]
        path = self.path(key)
        if path is None or not path.exists():
            return None
        try:
            record = json.loads(path.read_text())
            poly = serialize.from_json_obj(record["poly"])
            ok = record["digest"] == serialize.digest(poly) and record["key"] == key.as_json()
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("discarding unreadable cache entry %s: %s", path, exc)
            return None
        if not ok or (validate is not None and not validate(poly)):
            log.warning("discarding cache entry %s: digest or invariant check failed", path)
            return None
        with self._lock:
            self._memory[key] = poly
        return poly

    def store(self, key: DeltaKey, poly) -> None:
        with self._lock:
            self._memory[key] = poly
        path = self.path(key)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        record = {"key": key.as_json(), "digest": serialize.digest(poly),
                  "poly": serialize.to_json_obj(poly)}
        fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(record, fh)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, key: DeltaKey, compute: Callable[[], object],
                       validate: Callable[[object], bool] | None = None):
        poly = self.load(key, validate)
        if poly is None:
            poly = compute()
            self.store(key, poly)
        return poly


_default: DeltaCache | None = None
_default_lock = threading.Lock()


def default_cache() -> DeltaCache:
    """Process-wide cache at the directory from ``resolve_cache_dir()``."""
    global _default
    with _default_lock:
        wanted = resolve_cache_dir()
        if _default is None or _default.directory != wanted:
            _default = DeltaCache(wanted)
        return _default
