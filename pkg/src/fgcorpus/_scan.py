"""Selects the token-scan kernel at import time.

The compiled extension is used when it built successfully; setting the
environment variable ``FGCORPUS_PURE`` forces the pure-Python scanner.
"""

from __future__ import annotations

import os

from ._scan_py import KIND_AMBIGUOUS, KIND_ENTITY, KIND_NON_ENTITY
from ._scan_py import scan_sentence as _scan_py_impl

if os.environ.get("FGCORPUS_PURE"):
    scan_sentence = _scan_py_impl
    IMPLEMENTATION = "python"
else:
    try:
        from ._scan_c import scan_sentence  # type: ignore[no-redef]

        IMPLEMENTATION = "c"
    except ImportError:
        scan_sentence = _scan_py_impl
        IMPLEMENTATION = "python"

__all__ = [
    "IMPLEMENTATION",
    "KIND_AMBIGUOUS",
    "KIND_ENTITY",
    "KIND_NON_ENTITY",
    "scan_sentence",
]
