"""Persistent JSON cache for counting results.

Records are keyed by the (quiver, q) digest plus the query tuple, so a cache
file can be shared across categories.  Writes hold a process lock and go
through an atomic rename; a file with a different format version is ignored.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from fractions import Fraction
from pathlib import Path

FORMAT_VERSION = 1
ENV_VAR = "HALLALG_CACHE_DIR"


def _encode(value):
    if isinstance(value, Fraction):
        return {"frac": f"{value.numerator}/{value.denominator}"}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _decode(value):
    if isinstance(value, dict) and set(value) == {"frac"}:
        return Fraction(value["frac"])
    if isinstance(value, list):
        return [_decode(v) for v in value]
    return value


def _key_string(digest: str, key: tuple) -> str:
    return json.dumps([digest, _encode(list(key))], separators=(",", ":"))


class CountCache:
    """A dictionary of counting results backed by one JSON file."""

    def __init__(self, path: str | os.PathLike | None = None):
        if path is None:
            base = os.environ.get(ENV_VAR)
            path = Path(base) / "counts.json" if base else None
        self.path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._data: dict[str, dict] = {}
        self._dirty = False
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        try:
            blob = json.loads(self.path.read_text())
        except (OSError, json.JSONDecodeError):
            return
        if blob.get("format_version") != FORMAT_VERSION:
            return
        for rec in blob.get("records", []):
            self._data[rec["key"]] = rec

    def get(self, digest: str, key: tuple):
        rec = self._data.get(_key_string(digest, key))
        return None if rec is None else _decode(rec["value"])

    def put(self, digest: str, key: tuple, value) -> None:
        ks = _key_string(digest, key)
        with self._lock:
            self._data[ks] = {"key": ks, "kind": str(key[0]), "value": _encode(value)}
            self._dirty = True

    def __len__(self):
        return len(self._data)

    def flush(self) -> None:
        if self.path is None or not self._dirty:
            return
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            records = [self._data[k] for k in sorted(self._data)]
            blob = {"format_version": FORMAT_VERSION, "records": records}
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".counts-")
            with os.fdopen(fd, "w") as fh:
                json.dump(blob, fh, sort_keys=True, indent=1)
            os.replace(tmp, self.path)
            self._dirty = False
