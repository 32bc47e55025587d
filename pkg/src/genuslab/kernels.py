"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the NumPy
versions are. Setting ``GENUSLAB_PURE=1`` forces the NumPy path.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

if os.environ.get("GENUSLAB_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"


def rep_counts(a: int, b: int, c: int, limit: int) -> np.ndarray:
    """Number of (x, y) != (0, 0) with a x^2 + b x y + c y^2 = n, for n <= limit."""
    return _impl.rep_counts(int(a), int(b), int(c), int(limit))


def dconv_int64(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Dirichlet convolution of two 1-indexed int64 arrays (slot 0 ignored)."""
    f = np.ascontiguousarray(f, dtype=np.int64)
    g = np.ascontiguousarray(g, dtype=np.int64)
    if len(f) != len(g):
        raise ValueError("length mismatch")
    return _impl.dconv_int64(f, g)
