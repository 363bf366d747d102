"""JSON-lines persistence for invariant tables.

The first line is a header ``{"format": "tropgw-invariants", "version": 1,
"max_degree": ..., "min_chi": ...}``; every further line is
``{"gamma": <canonical config>, "value": "p/q"}``, sorted by the compact
JSON form of ``gamma``.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .configs import ConfigError, from_json
from .lattice import format_rational, parse_rational
from .solver import InvariantTable

FORMAT = "tropgw-invariants"
VERSION = 1

CACHE_ENV = "TROPGW_CACHE_DIR"
CACHE_FILENAME = "invariants.jsonl"


class StoreError(Exception):
    pass


class CorruptRecordError(StoreError):
    def __init__(self, path, lineno, reason):
        super().__init__(f"{path}:{lineno}: corrupt record: {reason}")
        self.path = path
        self.lineno = lineno


class VersionMismatchError(StoreError):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def dumps_table(t: InvariantTable) -> str:
    header = {"format": FORMAT, "version": VERSION, "max_degree": t.max_degree, "min_chi": t.min_chi}
    lines = [_dumps(header)]
    records = sorted((c.dumps(), format_rational(x)) for c, x in t.values.items())
    for key, value in records:
        lines.append('{"gamma":' + key + ',"value":' + json.dumps(value) + "}")
    return "\n".join(lines) + "\n"


def save_table(t: InvariantTable, path) -> None:
    """Write ``t`` atomically; equal tables give byte-identical files."""
    path = Path(path)
    if t.in_progress:
        raise StoreError(f"refusing to save {path}: table has unsolved entries")
    text = dumps_table(t)
    tmp = path.with_name(path.name + ".tmp")
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True)
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        raise StoreError(f"cannot write table to {path}: {exc}") from exc


def loads_table(text: str, path="<string>") -> InvariantTable:
    lines = text.splitlines()
    if not lines:
        raise CorruptRecordError(path, 1, "missing header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CorruptRecordError(path, 1, f"bad header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise CorruptRecordError(path, 1, "not an invariant table")
    if header.get("version") != VERSION:
        raise VersionMismatchError(
            f"{path}: version mismatch: file has {header.get('version')!r}, expected {VERSION}"
        )
    table = InvariantTable(max_degree=header.get("max_degree"), min_chi=header.get("min_chi"))
    prev = None
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            rec = json.loads(line)
            raw = rec["gamma"]
            c = from_json(raw)
            key = c.dumps()
            if _dumps(raw) != key:
                raise ValueError("configuration not in canonical form")
            if c.incoming is not None or not c.is_connected:
                raise ValueError("expected a connected outgoing-only configuration")
            value = parse_rational(rec["value"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError, ConfigError) as exc:
            raise CorruptRecordError(path, lineno, str(exc)) from exc
        if prev is not None and key <= prev:
            raise CorruptRecordError(path, lineno, "records out of order or duplicated")
        prev = key
        table.values[c] = value
    return table


def load_table(path) -> InvariantTable:
    """Read and validate a table file; all entries count as solved."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StoreError(f"cannot read table {path}: {exc}") from exc
    return loads_table(text, path)


def default_cache_path(cache_dir=None):
    """``<dir>/invariants.jsonl`` from ``cache_dir`` or ``$TROPGW_CACHE_DIR``; ``None`` if neither."""
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    return Path(cache_dir) / CACHE_FILENAME
