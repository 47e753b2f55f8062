"""Selects the compiled crossing kernel when available.

Set ``TROPBT_PURE_PYTHON=1`` to force the reference implementation.
"""

import os

from . import _kernel_py

_LIMIT = 1 << 60

try:
    if os.environ.get("TROPBT_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def fits_int64(pieces, points) -> bool:
    """Conservative bound: every intermediate product of the kernel stays below 2**60."""
    if not pieces or not points:
        return True
    c = max(max(abs(v) for v in p[:4]) for p in pieces)
    w = max(max(abs(v) for v in q) for q in points)
    return 8 * (w * c + w) * c < _LIMIT


def crossings(pieces, prims, points, backend=None):
    use = backend or BACKEND
    if use == "compiled" and _compiled is not None and fits_int64(pieces, points):
        return _compiled.crossings(pieces, prims, points)
    return _kernel_py.crossings(pieces, prims, points)
