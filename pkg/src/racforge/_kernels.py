"""Search-kernel backend selection.

The compiled Cython kernel is used when available; set RACFORGE_PURE=1 to
force the pure-Python fallback (the two are bit-identical by construction).
"""

from __future__ import annotations

import os

from . import _search_py

if os.environ.get("RACFORGE_PURE", "") not in ("", "0"):
    backend = _search_py
    BACKEND_NAME = "pure-python (forced)"
else:
    try:
        from . import _search_cy as backend  # type: ignore[no-redef]

        BACKEND_NAME = "cython"
    except ImportError:
        backend = _search_py
        BACKEND_NAME = "pure-python"
