"""Representation counts, partial ideal counts and Hecke coefficients.

For the form class group of D = -4N, ``c_i(n)`` counts ideals of norm n in
class i. A reduced form represents each such ideal w times (w = number of
units), so ``c_i(n) = rep_counts(Q_i)(n) / w`` and ``r_{2,N}(n) = w c_0(n)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import lcm
from pathlib import Path

import numpy as np

from . import cyclo, kernels
from .characters import IdealClassCharacter, character_group, genus_character_from_splitting
from .dirichlet import COMPLEX, INTEGER, CoeffSeries, char_series, dconv, zeta_K_series
from .quadforms import ClassGroup, QuadForm, class_group
from .scope import check_fundamental, check_N

CACHE_MAGIC = "QFC1"


def unit_count(D: int) -> int:
    if D >= 0:
        raise ValueError("unit_count expects a negative discriminant")
    check_fundamental(D)
    return {-4: 4, -3: 6}.get(D, 2)


def rep_counts_form(f: QuadForm, limit: int) -> np.ndarray:
    """counts[n] = #{(x, y) != (0, 0) : f(x, y) = n} for 0 <= n <= limit."""
    return kernels.rep_counts(f.a, f.b, f.c, limit)


@dataclass(frozen=True, eq=False)
class CoeffTable:
    N: int
    limit: int
    w: int
    group: ClassGroup
    counts: np.ndarray  # shape (h, limit + 1): counts[i, n] = c_i(n)

    @property
    def h(self) -> int:
        return self.counts.shape[0]

    @property
    def r(self) -> np.ndarray:
        return self.w * self.counts[0]

    @property
    def a(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoeffTable)
            and (self.N, self.limit, self.w, self.group.D) == (other.N, other.limit, other.w, other.group.D)
            and np.array_equal(self.counts, other.counts)
        )


def build_coeff_table(N: int, limit: int) -> CoeffTable:
    D = check_N(N)
    if limit < 1:
        raise ValueError("limit must be >= 1")
    G = class_group(D)
    w = unit_count(D)
    counts = np.empty((G.h, limit + 1), dtype=np.int64)
    for i, f in enumerate(G.forms):
        reps = rep_counts_form(f, limit)
        if np.any(reps % w):
            raise AssertionError(f"representation counts of {f} not divisible by w={w}")
        counts[i] = reps // w
    return CoeffTable(N, limit, w, G, counts)


def _check_group(chi: IdealClassCharacter, T: CoeffTable):
    if chi.D != T.group.D or chi.h != T.h:
        raise ValueError(f"character of D={chi.D} does not belong to the table for D={T.group.D}")


def hecke_coeffs(chi: IdealClassCharacter, T: CoeffTable) -> CoeffSeries:
    """b_chi(n) = sum_i chi(c_i) c_i(n), the coefficients of L(s, chi)."""
    _check_group(chi, T)
    if chi.is_genus:
        signs = np.array(chi.real_values(), dtype=np.int64)
        return CoeffSeries(signs @ T.counts, INTEGER)
    m = chi.order
    data = np.zeros((T.limit + 1, m), dtype=np.int64)
    for i, angle in enumerate(chi.angles):
        data[:, int(angle * m)] += T.counts[i]
    return CoeffSeries(cyclo.reduce(data, m), COMPLEX, m)


def reconstruct_reps(T: CoeffTable, chars: list[IdealClassCharacter]) -> np.ndarray:
    """r(n) = (w / h) sum_chi b_chi(n); the imaginary parts must cancel exactly."""
    if len(chars) != T.h or len({c.angles for c in chars}) != T.h:
        raise ValueError(f"need all {T.h} distinct characters, got {len(chars)}")
    e = lcm(*(c.order for c in chars))
    total = np.zeros((T.limit + 1, e), dtype=np.int64)
    for chi in chars:
        b = hecke_coeffs(chi, T)
        if b.domain == COMPLEX:
            total += cyclo.lift(b.data, b.order, e)
        else:
            total[:, 0] += b.data
    total = cyclo.reduce(total, e)
    if np.any(total[:, 1:]):
        raise AssertionError("non-real part survived the character sum")
    summed = total[:, 0]
    if np.any(summed % T.h):
        raise AssertionError("character sum not divisible by h")
    return T.w * (summed // T.h)


def kronecker_factorization_check(N: int, splitting, T: CoeffTable) -> bool:
    """b_{chi(D1,D2)}(n) == sum_{de=n} chi_D1(d) chi_D2(e) for all n <= limit."""
    if T.N != N:
        raise ValueError("table built for a different N")
    chi = genus_character_from_splitting(T.group, splitting)
    D1, D2 = chi.splitting
    rhs = dconv(char_series(D1, T.limit), char_series(D2, T.limit))
    return hecke_coeffs(chi, T) == rhs


def ideal_counts_match(T: CoeffTable) -> bool:
    """sum_i c_i(n) equals the divisor sum a_n = sum_{d | n} chi_D(d)."""
    a = zeta_K_series(T.group.D, T.limit)
    return bool(np.array_equal(T.a[1:], np.asarray(a.data[1:], dtype=np.int64)))


def decomposition_holds(T: CoeffTable, chars: list[IdealClassCharacter] | None = None) -> bool:
    chars = character_group(T.group) if chars is None else chars
    return bool(np.array_equal(reconstruct_reps(T, chars), T.r))


# ---------------------------------------------------------------- cache file

def cache_path(cache_dir: str | os.PathLike, N: int, limit: int) -> Path:
    return Path(cache_dir) / f"qfc_N{N}_L{limit}.csv"


def write_cache(T: CoeffTable, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = np.column_stack([np.arange(1, T.limit + 1), T.counts[:, 1:].T])
    with open(path, "w") as fh:
        fh.write(f"{CACHE_MAGIC},N={T.N},limit={T.limit},h={T.h},w={T.w}\n")
        np.savetxt(fh, rows, fmt="%d", delimiter=",")
    return path


def read_cache(path: str | os.PathLike, N: int, limit: int) -> CoeffTable:
    """Load a cached table, checking the header against (N, limit) and the class group."""
    D = check_N(N)
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header[0] != CACHE_MAGIC:
            raise ValueError(f"{path}: not a {CACHE_MAGIC} coefficient cache")
        fields = dict(item.split("=", 1) for item in header[1:])
        got = {k: int(v) for k, v in fields.items()}
        G = class_group(D)
        want = {"N": N, "limit": limit, "h": G.h, "w": unit_count(D)}
        if got != want:
            raise ValueError(f"{path}: header {got} does not match requested {want}")
        rows = np.loadtxt(fh, dtype=np.int64, delimiter=",", ndmin=2)
    if rows.shape != (limit, G.h + 1) or not np.array_equal(rows[:, 0], np.arange(1, limit + 1)):
        raise ValueError(f"{path}: malformed body")
    counts = np.zeros((G.h, limit + 1), dtype=np.int64)
    counts[:, 1:] = rows[:, 1:].T
    return CoeffTable(N, limit, want["w"], G, counts)


def load_or_build(N: int, limit: int, cache_dir: str | os.PathLike | None = None) -> CoeffTable:
    if cache_dir is None:
        return build_coeff_table(N, limit)
    path = cache_path(cache_dir, N, limit)
    if path.exists():
        return read_cache(path, N, limit)
    T = build_coeff_table(N, limit)
    write_cache(T, path)
    return T
