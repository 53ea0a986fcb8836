"""Canonical JSON encoding used for every machine-readable output.

One encoding everywhere keeps golden-file tests byte-exact and lets the
HTTP service promise byte-identical bodies for identical requests: keys
in the order the caller built them, no insignificant whitespace, UTF-8
with non-ASCII characters left unescaped.
"""

from __future__ import annotations

import json
from typing import Any


def dumps_canonical(obj: Any) -> str:
    """Serialize ``obj`` to its canonical one-line JSON form."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def dumps_canonical_bytes(obj: Any) -> bytes:
    return dumps_canonical(obj).encode("utf-8")
