"""Exact Dirichlet-series coefficient arithmetic on truncated series.

A series f(1..M) is stored 1-indexed in an array of length M + 1 whose
slot 0 is unused. Entries are exact: int64 or Python ints, Fractions, or
integer vectors in Z[zeta_m] for series with complex coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from . import cyclo, kernels
from .arith import kronecker, prime_factors
from .scope import check_fundamental

_I64_SAFE = 2**62

INTEGER, RATIONAL, COMPLEX = "integer", "rational", "complex"


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """Truncated Dirichlet series f(1), ..., f(M).

    ``domain`` is ``"integer"``, ``"rational"`` or ``"complex"``. Complex
    entries live in Z[zeta_order]: ``data`` then has shape
    ``(M + 1, phi(order))``.
    """

    data: np.ndarray
    domain: str = INTEGER
    order: int = 1

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("a series needs M >= 1")
        if self.domain not in (INTEGER, RATIONAL, COMPLEX):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.domain == COMPLEX and self.data.shape[1:] != (cyclo.degree(self.order),):
            raise ValueError("complex data must have phi(order) columns")

    @property
    def M(self) -> int:
        return self.data.shape[0] - 1

    def __len__(self) -> int:
        return self.M

    def __getitem__(self, n: int):
        if not 1 <= n <= self.M:
            raise IndexError(n)
        v = self.data[n]
        if self.domain == INTEGER:
            return int(v)
        if self.domain == RATIONAL:
            return Fraction(v)
        return v

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffSeries) or other.M != self.M:
            return NotImplemented if not isinstance(other, CoeffSeries) else False
        if COMPLEX in (self.domain, other.domain):
            m = lcm(self.order, other.order)
            a, b = _as_complex(self, m).data, _as_complex(other, m).data
            return bool(np.all(a[1:] == b[1:]))
        return all(x == y for x, y in zip(self.data[1:].tolist(), other.data[1:].tolist()))

    def mismatches(self, other: "CoeffSeries") -> list[int]:
        """Indices n where the two series differ."""
        if other.M != self.M:
            raise ValueError("length mismatch")
        if COMPLEX in (self.domain, other.domain):
            m = lcm(self.order, other.order)
            a, b = _as_complex(self, m).data, _as_complex(other, m).data
            return (np.flatnonzero(np.any(a != b, axis=1))).tolist()
        return [
            n
            for n, (x, y) in enumerate(zip(self.data.tolist(), other.data.tolist()))
            if n and x != y
        ]

    def tolist(self) -> list:
        return [self[n] for n in range(1, self.M + 1)]

    def to_complex(self) -> np.ndarray:
        """Floating-point values f(0..M) (slot 0 is 0)."""
        if self.domain == COMPLEX:
            return cyclo.to_complex(self.data, self.order)
        return np.asarray(self.data, dtype=np.float64).astype(np.complex128)

    def __repr__(self) -> str:
        head = ", ".join(str(self[n]) for n in range(1, min(self.M, 8) + 1))
        return f"CoeffSeries(M={self.M}, domain={self.domain}, [{head}{', ...' if self.M > 8 else ''}])"


def from_values(values, domain: str | None = None) -> CoeffSeries:
    """Series with f(n) = values[n - 1]."""
    values = list(values)
    if domain is None:
        domain = RATIONAL if any(isinstance(v, Fraction) for v in values) else INTEGER
    if domain == RATIONAL:
        data = np.array([Fraction(0)] + [Fraction(v) for v in values], dtype=object)
    else:
        data = _int_array([0] + [int(v) for v in values])
    return CoeffSeries(data, domain)


def _int_array(values) -> np.ndarray:
    values = list(values)
    if all(-_I64_SAFE < v < _I64_SAFE for v in values):
        return np.array(values, dtype=np.int64)
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr


def ones(M: int) -> CoeffSeries:
    """Coefficients of zeta(s)."""
    data = np.ones(M + 1, dtype=np.int64)
    data[0] = 0
    return CoeffSeries(data)


def delta(M: int) -> CoeffSeries:
    """The unit for Dirichlet convolution."""
    data = np.zeros(M + 1, dtype=np.int64)
    data[1] = 1
    return CoeffSeries(data)


def _as_rational(f: CoeffSeries) -> np.ndarray:
    if f.domain == RATIONAL:
        return f.data
    out = np.empty(f.M + 1, dtype=object)
    out[:] = [Fraction(int(v)) for v in f.data]
    return out


def _as_complex(f: CoeffSeries, m: int) -> CoeffSeries:
    if f.domain == COMPLEX:
        if f.order == m:
            return f
        return CoeffSeries(cyclo.reduce(cyclo.lift(f.data, f.order, m), m), COMPLEX, m)
    if f.domain == RATIONAL:
        raise TypeError("complex series are integral; rational entries cannot be mixed in")
    deg = cyclo.degree(m)
    data = np.zeros((f.M + 1, deg), dtype=f.data.dtype)
    data[:, 0] = f.data
    return CoeffSeries(cyclo.reduce(data, m), COMPLEX, m)


def _absmax(a: np.ndarray) -> int:
    if a.dtype == object:
        return max((abs(int(v)) for v in a.ravel()), default=0)
    return int(np.abs(a).max(initial=0))


def _dconv_scalar(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    M = len(f) - 1
    if f.dtype != object and g.dtype != object and _absmax(f) * _absmax(g) * M < _I64_SAFE:
        return kernels.dconv_int64(f, g)
    f, g = f.astype(object), g.astype(object)
    rational = isinstance(f[1], Fraction) or isinstance(g[1], Fraction)
    out = np.empty(M + 1, dtype=object)
    out[:] = [Fraction(0) if rational else 0] * (M + 1)
    for d in range(1, M + 1):
        fd = f[d]
        if fd:
            q = M // d
            out[d : q * d + 1 : d] += fd * g[1 : q + 1]
    return out


def _check_same_length(f: CoeffSeries, g: CoeffSeries):
    if f.M != g.M:
        raise ValueError(f"truncation mismatch: {f.M} != {g.M}")


def dconv(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """Dirichlet convolution (f*g)(n) = sum_{de=n} f(d) g(e)."""
    _check_same_length(f, g)
    if COMPLEX in (f.domain, g.domain):
        m = lcm(f.order, g.order)
        fc, gc = _as_complex(f, m).data, _as_complex(g, m).data
        df, dg = fc.shape[1], gc.shape[1]
        full = None
        for i in range(df):
            for j in range(dg):
                if not (np.any(fc[:, i]) and np.any(gc[:, j])):
                    continue
                col = _dconv_scalar(fc[:, i].copy(), gc[:, j].copy())
                if full is None:
                    full = np.zeros((f.M + 1, df + dg - 1), dtype=col.dtype)
                elif col.dtype == object and full.dtype != object:
                    full = full.astype(object)
                full[:, i + j] += col
        if full is None:
            full = np.zeros((f.M + 1, 1), dtype=np.int64)
        return CoeffSeries(cyclo.reduce(full, m), COMPLEX, m)
    if RATIONAL in (f.domain, g.domain):
        return CoeffSeries(_dconv_scalar(_as_rational(f), _as_rational(g)), RATIONAL)
    return CoeffSeries(_narrow(_dconv_scalar(f.data, g.data)), INTEGER)


def _narrow(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _absmax(a) < _I64_SAFE:
        return a.astype(np.int64)
    return a


def dinv(f: CoeffSeries) -> CoeffSeries:
    """Dirichlet inverse; requires f(1) != 0."""
    if f.domain == COMPLEX:
        raise TypeError("dinv supports integer and rational series")
    f1 = f.data[1]
    if f1 == 0:
        raise ZeroDivisionError("dinv needs f(1) != 0")
    M = f.M
    exact_int = f.domain == INTEGER and f1 in (1, -1)
    fo = f.data.astype(object) if exact_int else _as_rational(f)
    zero = 0 if exact_int else Fraction(0)
    g = np.empty(M + 1, dtype=object)
    g[:] = [zero] * (M + 1)
    acc = np.empty(M + 1, dtype=object)
    acc[:] = [zero] * (M + 1)
    for n in range(1, M + 1):
        num = (1 if n == 1 else 0) - acc[n]
        g[n] = num * int(f1) if exact_int else Fraction(num) / fo[1]
        q = M // n
        if q >= 2 and g[n]:
            acc[2 * n : q * n + 1 : n] += g[n] * fo[2 : q + 1]
    if exact_int:
        return CoeffSeries(_narrow(g), INTEGER)
    return CoeffSeries(g, RATIONAL)


def dilate2(f: CoeffSeries) -> CoeffSeries:
    """Coefficients of F(2s): g(k^2) = f(k), zero off the squares."""
    data = np.zeros_like(f.data)
    if f.domain == RATIONAL:
        data[:] = Fraction(0)
    k = np.arange(1, int(np.sqrt(f.M)) + 2)
    k = k[k * k <= f.M]
    data[k * k] = f.data[k]
    return CoeffSeries(data, f.domain, f.order)


def pointwise(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """Coefficientwise product f(n) g(n) (the Rankin-Selberg coefficient rule)."""
    _check_same_length(f, g)
    if COMPLEX in (f.domain, g.domain):
        m = lcm(f.order, g.order)
        return CoeffSeries(cyclo.mul(_as_complex(f, m).data, _as_complex(g, m).data, m), COMPLEX, m)
    if RATIONAL in (f.domain, g.domain):
        return CoeffSeries(_as_rational(f) * _as_rational(g), RATIONAL)
    a, b = f.data, g.data
    if a.dtype != object and b.dtype != object and _absmax(a) * _absmax(b) < _I64_SAFE:
        return CoeffSeries(a * b, INTEGER)
    return CoeffSeries(_narrow(a.astype(object) * b.astype(object)), INTEGER)


def char_series(d: int, M: int) -> CoeffSeries:
    """Coefficients kronecker(d, n) of L(s, chi_d) for a discriminant d."""
    if d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a discriminant (must be 0 or 1 mod 4)")
    q = abs(d)
    period = np.array([kronecker(d, n) for n in range(1, q + 1)], dtype=np.int64)
    data = np.zeros(M + 1, dtype=np.int64)
    data[1:] = np.resize(period, M)
    return CoeffSeries(data)


def euler_block(d: int, sign: int, M: int) -> CoeffSeries:
    """Finite Euler product over the primes p | d.

    ``sign=-1`` gives prod (1 + p^-s)^-1, with value (-1)^k at p^k;
    ``sign=+1`` gives prod (1 - p^-s), supported on squarefree products.
    """
    if d < 1:
        raise ValueError("euler_block needs d >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    data = np.zeros(M + 1, dtype=np.int64)
    support = {1: 1}
    for p in prime_factors(d):
        grown = {}
        for n, v in support.items():
            pk, k = n, 0
            while pk <= M:
                if sign == -1:
                    grown[pk] = v * (-1) ** k
                elif k <= 1:
                    grown[pk] = v * (-1) ** k
                pk *= p
                k += 1
        support = grown
    for n, v in support.items():
        data[n] = v
    return CoeffSeries(data)


def zeta_K_series(d_K: int, M: int) -> CoeffSeries:
    """Ideal counts a_n = sum_{e | n} kronecker(d_K, e) of the quadratic field of discriminant d_K."""
    check_fundamental(d_K)
    return dconv(ones(M), char_series(d_K, M))


def inv_zeta2s(M: int) -> CoeffSeries:
    """Coefficients of 1/zeta(2s)."""
    return dinv(dilate2(ones(M)))


def nowak_rhs(d_K: int, M: int) -> CoeffSeries:
    """Coefficients of zeta_K(s)^2 / zeta(2s) * prod_{p | d_K} (1 + p^-s)^-1."""
    a = zeta_K_series(d_K, M)
    t = dconv(dconv(a, a), inv_zeta2s(M))
    return dconv(t, euler_block(abs(d_K), -1, M))


def nowak_check(d_K: int, M: int) -> list[int]:
    """Indices where sum r_K(n)^2 n^-s disagrees with its closed form (empty = identity holds)."""
    a = zeta_K_series(d_K, M)
    return pointwise(a, a).mismatches(nowak_rhs(d_K, M))


def genus_square_rhs(N: int, M: int) -> CoeffSeries:
    """Coefficients of zeta(s)^2 L(s, chi_-4N)^2 / zeta(2s) * prod_{p | 2N} (1 + p^-s)^-1."""
    z = ones(M)
    L = char_series(-4 * N, M)
    t = dconv(dconv(z, z), dconv(L, L))
    t = dconv(t, inv_zeta2s(M))
    return dconv(t, euler_block(2 * N, -1, M))
