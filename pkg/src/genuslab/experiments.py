"""Partial-sum scans and two-term fits S(x) ~ A x log x + B x."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import cyclo
from .analytic import A1, theorem13_constant
from .characters import IdealClassCharacter, character_group
from .coeffs import CoeffTable, hecke_coeffs, load_or_build
from .dirichlet import COMPLEX

XLOGX, LINEAR, INCONCLUSIVE = "xlogx", "linear", "inconclusive"
MIN_FIT_POINTS = 4


def default_grid(limit: int, density: int = 4, start_exp: int = 3) -> np.ndarray:
    """x_j = floor(10^(start_exp + j/density)) for all x_j <= limit."""
    xs = []
    j = 0
    while True:
        x = math.floor(10 ** (start_exp + j / density) + 1e-9)
        if x > limit:
            break
        if not xs or x > xs[-1]:
            xs.append(x)
        j += 1
    return np.array(xs, dtype=np.int64)


@dataclass
class ScanGrid:
    x: np.ndarray
    S: np.ndarray
    name: str = ""
    density: int = 4

    def __post_init__(self):
        if len(self.x) and np.any(np.diff(self.x) <= 0):
            raise ValueError("grid must be strictly increasing")

    @property
    def decades(self) -> float:
        return math.log10(self.x[-1] / self.x[0]) if len(self.x) > 1 else 0.0

    def normalized(self) -> np.ndarray:
        return self.S / self.x


def scan(series: np.ndarray, grid, name: str = "", density: int = 4) -> ScanGrid:
    """Prefix sums sum_{n <= x} series[n] at each grid point (series[0] ignored)."""
    series = np.asarray(series)
    grid = np.asarray(grid, dtype=np.int64)
    if len(grid) and grid[-1] > len(series) - 1:
        raise ValueError(f"grid reaches {grid[-1]} but series stops at {len(series) - 1}")
    csum = np.cumsum(series[1:]) if len(series) > 1 else np.zeros(0)
    S = csum[grid - 1] if len(grid) else csum[:0]
    return ScanGrid(grid, S, name, density)


@dataclass
class FitResult:
    A: float
    B: float
    residual: float
    points: int
    classification: str = INCONCLUSIVE


def _top_half(sg: ScanGrid) -> tuple[np.ndarray, np.ndarray]:
    m = len(sg.x)
    lo = m // 2
    if m - lo < MIN_FIT_POINTS:
        lo = max(0, m - MIN_FIT_POINTS)
    return sg.x[lo:].astype(np.float64), np.asarray(sg.S[lo:], dtype=np.float64)


def fit_xlogx(sg: ScanGrid) -> FitResult:
    """Least squares S(x)/x = A log x + B over the top half of the grid."""
    x, S = _top_half(sg)
    if len(x) < MIN_FIT_POINTS:
        raise ValueError(f"need at least {MIN_FIT_POINTS} grid points, got {len(x)}")
    design = np.column_stack([np.log(x), np.ones_like(x)])
    y = S / x
    (A, B), *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.linalg.norm(design @ (A, B) - y))
    return FitResult(float(A), float(B), residual, len(x), growth_classify(sg))


def growth_classify(sg: ScanGrid) -> str:
    """'xlogx' if S(x)/x still climbs with log x, 'linear' if it has settled."""
    if len(sg.x) < 6 or sg.decades < 2:
        return INCONCLUSIVE
    x, S = _top_half(sg)
    y = S / x
    slope, _ = np.polyfit(np.log(x), y, 1)
    scale = abs(S[-1]) / (x[-1] * math.log(x[-1]))
    if slope > 0.1 * scale:
        return XLOGX
    span = math.log10(x[-1] / x[0])
    drift = abs(y[-1] - y[0]) / abs(y[0]) / span if y[0] else math.inf
    return LINEAR if drift < 0.5 else INCONCLUSIVE


# ------------------------------------------------------------------ series

def diagonal_series(b) -> np.ndarray:
    """|b(n)|^2 as floats (b(n)^2 for real characters)."""
    if b.domain == COMPLEX:
        sq = cyclo.mul(b.data, cyclo.conj(b.data, b.order), b.order)
        return cyclo.to_complex(sq, b.order).real
    v = np.asarray(b.data, dtype=np.float64)
    return v * v


def _values(b) -> np.ndarray:
    if b.domain == COMPLEX:
        return b.to_complex()
    return np.asarray(b.data, dtype=np.float64)


# ------------------------------------------------------------- experiments

@dataclass
class Theorem13Row:
    N: int
    limit: int
    A: float
    B: float
    target: float
    rel_dev: float
    points: int
    low_confidence: bool


def theorem13_experiment(N: int, limit: int, density: int = 4, T: CoeffTable | None = None,
                         cache_dir=None) -> Theorem13Row:
    """Fit sum_{n <= x} r_{2,N}(n)^2 and compare A with (3/N) prod 2p/(p+1)."""
    T = load_or_build(N, limit, cache_dir) if T is None else T
    target = theorem13_constant(N)
    grid = default_grid(limit, density)
    r = T.r.astype(np.int64)
    sg = scan(r * r, grid, "r^2", density)
    if len(grid) < MIN_FIT_POINTS:
        return Theorem13Row(N, limit, math.nan, math.nan, target, math.nan, len(grid), True)
    fit = fit_xlogx(sg)
    return Theorem13Row(
        N, limit, fit.A, fit.B, target, abs(fit.A - target) / target, fit.points,
        len(grid) < 6 or sg.decades < 2,
    )


@dataclass
class CharacterRow:
    index: int
    order: int
    is_genus: bool
    splitting: tuple | None
    A: float
    B: float
    classification: str
    A1_rel_dev: float | None = None


def diagonal_suite(T: CoeffTable, chars: list[IdealClassCharacter] | None = None,
                   density: int = 4) -> list[CharacterRow]:
    """Fit sum |b_chi(n)|^2 for every nontrivial character and classify its growth."""
    chars = character_group(T.group) if chars is None else chars
    grid = default_grid(T.limit, density)
    a1 = A1(T.N)
    rows = []
    for i, chi in enumerate(chars):
        if chi.is_trivial:
            continue
        sg = scan(diagonal_series(hecke_coeffs(chi, T)), grid, f"|b_{i}|^2", density)
        if len(grid) >= MIN_FIT_POINTS:
            fit = fit_xlogx(sg)
            A, B, cls = fit.A, fit.B, fit.classification
        else:
            A, B, cls = math.nan, math.nan, INCONCLUSIVE
        rows.append(CharacterRow(
            i, chi.order, chi.is_genus, chi.splitting, A, B, cls,
            abs(A - a1) / a1 if chi.is_genus else None,
        ))
    return rows


@dataclass
class CrossRow:
    pair: tuple[int, int]
    kind: str  # "a*b" or "b*b"
    normalized: list[float] = field(default_factory=list)  # |S(x)|/x on the grid
    max_normalized: float = 0.0
    final_xlogx_ratio: float = 0.0
    bounded: bool = True
    decreasing: bool = True


def decade_maxima(sg: ScanGrid, values: np.ndarray) -> np.ndarray:
    """Maxima of ``values`` over consecutive decades of the grid, oldest first.

    Blocks hold ``density`` points each and are counted back from the top
    point, so the last block is (x_m / 10, x_m].
    """
    d = sg.density
    m = len(values)
    stops = list(range(m, 0, -d))
    return np.array([values[max(0, e - d):e].max() for e in reversed(stops) if e - d >= 0])


def bounded_growth(sg: ScanGrid, growth: float = 1.5) -> bool:
    """|S(x)|/x: no decade's maximum exceeds ``growth`` times the previous one."""
    block = decade_maxima(sg, np.abs(sg.S) / sg.x)
    return bool(np.all(block[1:] <= growth * block[:-1]))


def decreasing_top_decades(sg: ScanGrid, decades: int = 3) -> bool:
    """|S(x)|/(x log x): decade maxima strictly decrease over the top decades."""
    x = sg.x.astype(np.float64)
    block = decade_maxima(sg, np.abs(sg.S) / (x * np.log(x)))
    if len(block) < decades:
        return False
    return bool(np.all(np.diff(block[-decades:]) < 0))


def cross_term_suite(T: CoeffTable, chars: list[IdealClassCharacter] | None = None,
                     density: int = 4) -> list[CrossRow]:
    """Partial sums of a_n b_chi(n) and b_chi(n) b_psi(n) for distinct characters."""
    chars = character_group(T.group) if chars is None else chars
    grid = default_grid(T.limit, density)
    b = [_values(hecke_coeffs(c, T)) for c in chars]
    triv = next(i for i, c in enumerate(chars) if c.is_trivial)
    rows = []
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            if triv in (i, j):
                other = j if i == triv else i
                pair, kind = (triv, other), "a*b"
            else:
                pair, kind = (i, j), "b*b"
            sg = scan(b[i] * b[j], grid, f"{kind}{pair}", density)
            x = sg.x.astype(np.float64)
            norm = np.abs(sg.S) / x
            rows.append(CrossRow(
                pair, kind, norm.tolist(),
                float(norm.max()) if len(norm) else 0.0,
                float(abs(sg.S[-1]) / (x[-1] * math.log(x[-1]))) if len(x) else 0.0,
                bounded_growth(sg),
                decreasing_top_decades(sg),
            ))
    return rows
