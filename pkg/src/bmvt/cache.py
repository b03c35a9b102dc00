"""On-disk cache of sieved tables with a checksummed manifest.

Tables are persisted in the binary format of :mod:`bmvt.funtable`; the
manifest records (name, N, domain, sha256, built_at) per entry so a second
run can load instead of rebuild.  A corrupt or missing file triggers a
rebuild of just that table, with a warning.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from datetime import datetime, timezone
from pathlib import Path

from .funtable import FunTable, build_standard, load_table

log = logging.getLogger("bmvt.cache")

ENV_CACHE_DIR = "BMVT_CACHE_DIR"
_MANIFEST = "manifest.json"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env).expanduser()
    return Path("~/.cache/bmvt").expanduser()


def _entry_key(name: str, n: int) -> str:
    return f"{name}_{n}"


def _file_name(name: str, n: int) -> str:
    safe = name.replace("(", "_").replace(")", "")
    return f"{safe}_{n}.ftab"


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class TableCache:
    """Build-or-load access to standard tables under one directory."""

    def __init__(self, cache_dir: Path | str | None = None):
        self.dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.dir.mkdir(parents=True, exist_ok=True)
        self._manifest_path = self.dir / _MANIFEST
        self.manifest = self._read_manifest()

    def _read_manifest(self) -> dict:
        if not self._manifest_path.exists():
            return {"entries": {}}
        try:
            with open(self._manifest_path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            log.warning("cache manifest unreadable; starting fresh")
            return {"entries": {}}
        data.setdefault("entries", {})
        return data

    def _write_manifest(self) -> None:
        with open(self._manifest_path, "w") as fh:
            json.dump(self.manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")

    def load_or_build(self, name: str, n: int, *, allow_large: bool = True) -> FunTable:
        """Return the table, loading from cache when checksums agree.

        A cached table is used only at its exact length; a run needing a
        longer table rebuilds and re-persists at the new length.
        """
        key = _entry_key(name, n)
        entry = self.manifest["entries"].get(key)
        if entry is not None:
            path = self.dir / entry["file"]
            if not path.exists():
                log.warning("cache file %s missing; rebuilding %s", path.name, key)
            elif _sha256(path) != entry["sha256"]:
                log.warning("cache checksum mismatch for %s; rebuilding", key)
            else:
                try:
                    return load_table(path)
                except Exception:
                    log.warning("cache file %s unreadable; rebuilding", path.name)
        table = build_standard(name, n, allow_large=allow_large)
        self.store(table)
        return table

    def store(self, table: FunTable) -> None:
        key = _entry_key(table.name, table.N)
        fname = _file_name(table.name, table.N)
        path = self.dir / fname
        table.save(path)
        self.manifest["entries"][key] = {
            "name": table.name,
            "N": table.N,
            "domain": table.domain,
            "file": fname,
            "sha256": _sha256(path),
            "built_at": datetime.now(timezone.utc).isoformat(),
        }
        self._write_manifest()


def cache_tables(cache_dir: Path | str | None, names: list[str], n: int) -> dict:
    """Persist the named standard tables at length n; returns the manifest."""
    cache = TableCache(cache_dir)
    for name in names:
        cache.load_or_build(name, n)
    return cache.manifest
