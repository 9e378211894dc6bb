"""Persistent memo cache for closure-membership decisions.

Decisions are stored as JSON lines keyed by (backend fingerprint, object
iso key, generator fingerprint).  The cache only ever stores values that
are recomputed identically on a miss, so deleting it (even mid-run) is
safe and warm runs are byte-identical to cold ones.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile

SCHEMA = 1


def _to_tuple(x):
    if isinstance(x, list):
        return tuple(_to_tuple(v) for v in x)
    return x


def _cache_path(cache_dir: str, backend_fp: str) -> str:
    digest = hashlib.sha1(backend_fp.encode()).hexdigest()[:16]
    return os.path.join(cache_dir, f"membership-{digest}.jsonl")


def load_membership(cache_dir: str, backend_fp: str) -> dict:
    """Parse cached decisions; corrupt lines are skipped with a warning."""
    path = _cache_path(cache_dir, backend_fp)
    out: dict = {}
    if not os.path.exists(path):
        return out
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                if rec.get("schema") != SCHEMA or rec.get("backend") != backend_fp:
                    continue
                key = (_to_tuple(rec["obj"]), _to_tuple(rec["gens"]))
                value = rec["value"]
                if not isinstance(value, bool):
                    raise ValueError("value must be a bool")
                out[key] = value
            except (ValueError, KeyError, TypeError) as exc:
                print(f"warning: ignoring corrupt cache line {path}:{lineno}: {exc}",
                      file=sys.stderr)
    return out


def save_membership(cache_dir: str, backend_fp: str, table: dict):
    """Atomically rewrite the cache file with the merged decision table."""
    os.makedirs(cache_dir, exist_ok=True)
    merged = load_membership(cache_dir, backend_fp)
    merged.update(table)
    path = _cache_path(cache_dir, backend_fp)
    records = []
    for (obj, gens), value in merged.items():
        records.append(json.dumps(
            {"schema": SCHEMA, "backend": backend_fp, "obj": obj, "gens": gens,
             "value": value},
            sort_keys=True))
    records.sort()
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("\n".join(records) + ("\n" if records else ""))
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
