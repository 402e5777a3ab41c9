"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``COARSECOLOR_PURE=1`` before import to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("COARSECOLOR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

bfs_distances = _impl.bfs_distances
multi_source_bfs = _impl.multi_source_bfs
is_automorphism = _impl.is_automorphism

# the compiled search works in 64-bit integers; large instances go to Python ints
_INT64_SAFE = 2**62


def min_product_search(delta: int, length: int, total: int):
    if BACKEND == "cython" and (total + 1) ** max(length - 2, 0) < _INT64_SAFE and total * delta < _INT64_SAFE:
        return _impl.min_product_search(delta, length, total)
    return _pykernels.min_product_search(delta, length, total)


def backends():
    """Map of available backend name -> kernel module (used by tests and benchmarks)."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
