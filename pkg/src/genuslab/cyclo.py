"""Exact arithmetic in Z[zeta_m] on integer coefficient vectors.

An element is stored as its coefficients on 1, z, ..., z^(phi(m)-1) after
reduction modulo the m-th cyclotomic polynomial, so equal elements have
equal vectors. Arrays may carry leading batch axes; the last axis holds
coefficients.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _exact_div(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num), "inexact cyclotomic division"
    return q


def degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def reduce(vec: np.ndarray, m: int) -> np.ndarray:
    """Reduce coefficient vectors of any length modulo Phi_m."""
    phi = np.asarray(cyclotomic_poly(m), dtype=vec.dtype)
    deg = len(phi) - 1
    vec = vec.copy()
    for top in range(vec.shape[-1] - 1, deg - 1, -1):
        lead = vec[..., top].copy()
        vec[..., top - deg : top + 1] -= lead[..., None] * phi
    out = vec[..., :deg]
    if out.shape[-1] < deg:
        pad = [(0, 0)] * (out.ndim - 1) + [(0, deg - out.shape[-1])]
        out = np.pad(out, pad)
    return out


def root(k: int, m: int, dtype=np.int64) -> np.ndarray:
    """zeta_m ** k as a reduced vector."""
    v = np.zeros(m, dtype=dtype)
    v[k % m] = 1
    return reduce(v, m)


def lift(vec: np.ndarray, m: int, e: int) -> np.ndarray:
    """Embed Z[zeta_m] into Z[zeta_e] (m | e) via zeta_m = zeta_e^(e/m); unreduced."""
    if e % m:
        raise ValueError(f"{m} does not divide {e}")
    step = e // m
    out = np.zeros(vec.shape[:-1] + (e,), dtype=vec.dtype)
    out[..., : vec.shape[-1] * step : step] = vec
    return out


def mul(u: np.ndarray, v: np.ndarray, m: int) -> np.ndarray:
    """Elementwise (batched) product in Z[zeta_m]."""
    du, dv = u.shape[-1], v.shape[-1]
    shape = np.broadcast_shapes(u.shape[:-1], v.shape[:-1]) + (du + dv - 1,)
    full = np.zeros(shape, dtype=np.result_type(u, v))
    for i in range(du):
        full[..., i : i + dv] += u[..., i : i + 1] * v
    return reduce(full, m)


def conj(vec: np.ndarray, m: int) -> np.ndarray:
    """Complex conjugation zeta -> zeta^-1."""
    d = vec.shape[-1]
    out = np.zeros(vec.shape[:-1] + (m,), dtype=vec.dtype)
    for j in range(d):
        out[..., (-j) % m] += vec[..., j]
    return reduce(out, m)


def to_complex(vec: np.ndarray, m: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(vec.shape[-1]) / m)
    return np.asarray(vec, dtype=np.float64) @ z


def is_rational(vec: np.ndarray) -> np.ndarray:
    """True where the element lies in Z (all non-constant coefficients zero)."""
    return ~np.any(vec[..., 1:] != 0, axis=-1)


def order_of_root(k: int, m: int) -> int:
    return m // gcd(k % m, m) if k % m else 1
