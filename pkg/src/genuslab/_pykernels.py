"""NumPy implementations of the hot loops; used when the compiled module is absent."""
from __future__ import annotations

from math import isqrt

import numpy as np

_CHUNK = 1 << 22


def y_bound(a: int, b: int, c: int, limit: int) -> int:
    # a*f(x,y) = (a x + b y/2)^2 + (|D|/4) y^2, so |D| y^2 <= 4 a limit
    D = b * b - 4 * a * c
    return isqrt(4 * a * limit // -D)


def x_range(a: int, b: int, c: int, y: int, limit: int) -> tuple[int, int]:
    """Inclusive x-interval on which a x^2 + b x y + c y^2 <= limit."""
    D = b * b - 4 * a * c
    disc = 4 * a * limit + D * y * y
    if disc < 0:
        return 1, 0
    s = isqrt(disc)
    lo = -((b * y + s) // (2 * a))  # ceil((-b y - s) / 2a)
    hi = (s - b * y) // (2 * a)
    return lo, hi


def rep_counts(a: int, b: int, c: int, limit: int) -> np.ndarray:
    counts = np.zeros(limit + 1, dtype=np.int64)
    pending: list[np.ndarray] = []
    size = 0
    ymax = y_bound(a, b, c, limit)
    for y in range(-ymax, ymax + 1):
        lo, hi = x_range(a, b, c, y, limit)
        if lo > hi:
            continue
        xs = np.arange(lo, hi + 1, dtype=np.int64)
        vals = a * xs * xs + (b * y) * xs + c * y * y
        pending.append(vals)
        size += vals.size
        if size > _CHUNK:
            counts += np.bincount(np.concatenate(pending), minlength=limit + 1)
            pending, size = [], 0
    if pending:
        counts += np.bincount(np.concatenate(pending), minlength=limit + 1)
    counts[0] = 0
    return counts


def dconv_int64(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    M = len(f) - 1
    out = np.zeros(M + 1, dtype=np.int64)
    for d in range(1, M + 1):
        fd = f[d]
        if fd:
            q = M // d
            out[d : q * d + 1 : d] += fd * g[1 : q + 1]
    return out
