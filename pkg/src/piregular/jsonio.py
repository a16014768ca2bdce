"""Canonical JSON serialization: sorted keys, no whitespace, no floats.

Every document the toolkit emits goes through :func:`canonical_dumps`, so a
given payload always serializes to identical bytes.  Content hashes are
SHA-256 over those bytes.
"""

from __future__ import annotations

import hashlib
import json

from .errors import MalformedPayload

_ALLOWED_SCALARS = (str, int, bool, type(None))


def _check_exact(obj, path="$"):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return
    if isinstance(obj, float):
        raise MalformedPayload(f"floating point value at {path}; all numbers must be exact")
    if isinstance(obj, (list, tuple)):
        for i, item in enumerate(obj):
            _check_exact(item, f"{path}[{i}]")
        return
    if isinstance(obj, dict):
        for key, value in obj.items():
            if not isinstance(key, str):
                raise MalformedPayload(f"non-string key {key!r} at {path}")
            _check_exact(value, f"{path}.{key}")
        return
    raise MalformedPayload(f"unserializable value {obj!r} at {path}")


def canonical_dumps(obj) -> str:
    """Serialize to the canonical form; rejects floats anywhere."""
    _check_exact(obj)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(obj) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(canonical_dumps(obj).encode("ascii")).hexdigest()


def hash_lines(lines) -> str:
    """SHA-256 over newline-joined canonical lines (for JSON-lines streams)."""
    digest = hashlib.sha256()
    for line in lines:
        digest.update(line.encode("ascii"))
        digest.update(b"\n")
    return digest.hexdigest()
