"""Report envelopes and canonical serialization.

Certificates are the product of this tool, so their serialized form must
be reproducible: canonical JSON is sorted, separator-normalized ASCII, and
volatile fields (timestamps, wall-clock) are confined to the envelope or
stripped before hashing.  Re-running with the same config and seed yields
byte-identical canonical payloads at any thread count.
"""

from __future__ import annotations

import datetime
import hashlib
import json
from fractions import Fraction

SCHEMA = "rfl/1"

#: Keys treated as volatile: excluded from canonical bytes and checksums.
VOLATILE_KEYS = frozenset({"timestamp", "wall_clock_seconds"})


def _jsonable(value):
    if isinstance(value, Fraction):
        return {"numerator": value.numerator, "denominator": value.denominator}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_payload"):
        return _jsonable(value.to_payload())
    return value


def _strip_volatile(value):
    if isinstance(value, dict):
        return {
            k: _strip_volatile(v) for k, v in value.items() if k not in VOLATILE_KEYS
        }
    if isinstance(value, list):
        return [_strip_volatile(v) for v in value]
    return value


def canonical_bytes(payload) -> bytes:
    """Deterministic byte serialization of a payload, volatile keys removed."""
    cleaned = _strip_volatile(_jsonable(payload))
    return json.dumps(cleaned, sort_keys=True, separators=(",", ":")).encode("ascii")


def sha256_of(payload) -> str:
    return hashlib.sha256(canonical_bytes(payload)).hexdigest()


def envelope(config: dict, payload, version: str) -> dict:
    """Wrap a payload in the versioned report envelope."""
    return {
        "schema": SCHEMA,
        "version": version,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": _jsonable(config),
        "payload": _jsonable(payload),
        "payload_sha256": sha256_of(payload),
    }


def dump_envelope(env: dict) -> str:
    return json.dumps(env, indent=2, sort_keys=True)
