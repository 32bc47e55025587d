"""Floating-point values of L(1, chi_D), L'/L, zeta'(2) and the constants built from them."""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .arith import kronecker, prime_factors
from .coeffs import unit_count
from .quadforms import class_group
from .scope import check_fundamental, check_N

EULER_GAMMA = 0.577215664901532861
_BERNOULLI = (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66))


@lru_cache(maxsize=64)
def _period(D: int) -> np.ndarray:
    q = abs(D)
    out = np.array([kronecker(D, n) for n in range(1, q + 1)], dtype=np.float64)
    out.flags.writeable = False
    return out


def _periodic_sum(D: int, X: int, g, dg) -> float:
    """sum_{n >= 1} chi_D(n) g(n) for smooth decreasing g, from the first X terms.

    X is a multiple of the period q. Since chi sums to zero over a period,
    the tail sum_{b >= 0} sum_{j=1}^{q} chi(j) g(X + bq + j) is expanded in
    Taylor terms about each block start and the block sums are replaced by
    integrals; what is left is O(q^2 g''(X)).
    """
    chi = _period(D)
    q = len(chi)
    n = np.arange(1, X + 1, dtype=np.float64)
    head = float(np.dot(np.resize(chi, X), g(n)))
    j = np.arange(1, q + 1, dtype=np.float64)
    m1 = float(np.dot(chi, j))
    m2 = float(np.dot(chi, j * j))
    # sum_b g'(X + bq) ~ -g(X)/q - g'(X)/2
    tail = m1 * (-g(X) / q - dg(X) / 2) + (m2 / 2) * (-dg(X) / q)
    return float(head + tail)


def _converged_sum(D: int, g, dg, tol: float, start: int = 2**16, cutoff: int = 10**8):
    q = abs(D)
    X = -(-start // q) * q
    prev = _periodic_sum(D, X, g, dg)
    while 2 * X <= cutoff:
        X *= 2
        cur = _periodic_sum(D, X, g, dg)
        if abs(cur - prev) < tol:
            return cur, True
        prev = cur
    return prev, False


def L1_series(D: int, tol: float = 1e-10) -> float:
    """L(1, chi_D) by direct summation of chi_D(n)/n with end correction."""
    value, _ = _converged_sum(D, lambda t: 1.0 / t, lambda t: -1.0 / (t * t), tol)
    return value


def L1_formula(D: int, h: int, w: int) -> float:
    """Class number formula 2 pi h / (w sqrt|D|) for D < 0."""
    return 2 * math.pi * h / (w * math.sqrt(-D))


def L1(D: int, h: int | None = None, w: int | None = None) -> tuple[float, float]:
    """(class-number-formula value, series value) of L(1, chi_D)."""
    check_fundamental(D)
    if D >= 0:
        raise ValueError("L1 expects a negative discriminant")
    h = class_group(D).h if h is None else h
    w = unit_count(D) if w is None else w
    return L1_formula(D, h, w), L1_series(D)


def Lprime_1(D: int, tol: float = 1e-4) -> tuple[float, bool]:
    """L'(1, chi_D) = -sum chi_D(n) log(n)/n; returns (value, converged)."""
    value, ok = _converged_sum(
        D,
        lambda t: np.log(t) / t,
        lambda t: (1.0 - np.log(t)) / (t * t),
        tol,
    )
    return -float(value), ok


def Lprime_over_L(D: int) -> float:
    check_fundamental(D)
    lp, _ = Lprime_1(D)
    return lp / L1_series(D)


def zeta_prime_2(M: int = 64) -> float:
    """zeta'(2) = -sum log(n)/n^2 by Euler-Maclaurin from n = M."""
    n = np.arange(1, M, dtype=np.float64)
    head = float(np.sum(np.log(n) / n**2))
    L = math.log(M)
    # k-th derivative of t^-2 log t is t^(-2-k) (alpha_k log t + beta_k)
    derivs = []
    alpha, beta = 1.0, 0.0
    for k in range(2 * len(_BERNOULLI)):
        derivs.append(M ** (-2 - k) * (alpha * L + beta))
        alpha, beta = -(2 + k) * alpha, -(2 + k) * beta + alpha
    tail = (L + 1) / M + derivs[0] / 2
    for i, B in enumerate(_BERNOULLI, start=1):
        tail -= float(B) / math.factorial(2 * i) * derivs[2 * i - 1]
    return -(head + tail)


def _primes_2N(N: int) -> list[int]:
    return prime_factors(2 * N)


def alpha_N(N: int) -> float:
    """-1 + 2 gamma + sum_{p | 2N} log p/(p+1) + 2 L'/L(1, chi_-4N) - (12/pi^2) zeta'(2)."""
    D = check_N(N)
    return (
        -1
        + 2 * EULER_GAMMA
        + sum(math.log(p) / (p + 1) for p in _primes_2N(N))
        + 2 * Lprime_over_L(D)
        - 12 / math.pi**2 * zeta_prime_2()
    )


def A1(N: int) -> float:
    """(6/pi^2) L(1, chi_d)^2 prod_{p | d} p/(p+1) with d = -4N."""
    D = check_N(N)
    L, _ = L1(D)
    return 6 / math.pi**2 * L * L * math.prod(p / (p + 1) for p in prime_factors(D))


def A1_B1(N: int) -> tuple[float, float]:
    a = A1(N)
    return a, a * alpha_N(N)


def theorem13_constant(N: int) -> float:
    """(3/N) prod_{p | 2N} 2p/(p+1), the x log x coefficient of sum r_{2,N}(n)^2."""
    check_N(N)
    return 3 / N * math.prod(2 * p / (p + 1) for p in _primes_2N(N))


def theorem13_constant_exact(N: int) -> Fraction:
    check_N(N)
    out = Fraction(3, N)
    for p in _primes_2N(N):
        out *= Fraction(2 * p, p + 1)
    return out


def constant_consistency(N: int, rtol: float = 1e-9) -> bool:
    """theorem13_constant(N) == (w^2/h^2) 2^(k-1) A1(N): the genus terms, each
    worth A1 x log x, are the only x log x contributions to sum r^2."""
    D = check_N(N)
    G = class_group(D)
    w = unit_count(D)
    lhs = theorem13_constant(N)
    rhs = (w * w) / (G.h * G.h) * G.num_genera * A1(N)
    return abs(lhs - rhs) <= rtol * abs(lhs)


@dataclass
class ConstantsReport:
    N: int
    L1_formula: float
    L1_series: float
    L1_no_units: float  # h pi / sqrt(N), i.e. without the 2/w unit factor
    gamma: float
    zeta_prime_2: float
    Lprime_over_L: float
    Lprime_converged: bool
    alpha_N: float
    A1: float
    B1: float
    thm13_constant: float
    consistent: bool

    def asdict(self) -> dict:
        return asdict(self)


def constants_report(N: int) -> ConstantsReport:
    D = check_N(N)
    G = class_group(D)
    w = unit_count(D)
    lf, ls = L1(D, G.h, w)
    lp, ok = Lprime_1(D)
    alpha = alpha_N(N)
    a1 = A1(N)
    return ConstantsReport(
        N=N,
        L1_formula=lf,
        L1_series=ls,
        L1_no_units=G.h * math.pi / math.sqrt(N),
        gamma=EULER_GAMMA,
        zeta_prime_2=zeta_prime_2(),
        Lprime_over_L=lp / ls,
        Lprime_converged=ok,
        alpha_N=alpha,
        A1=a1,
        B1=a1 * alpha,
        thm13_constant=theorem13_constant(N),
        consistent=constant_consistency(N),
    )
