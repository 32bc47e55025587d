"""Integer utilities: sieving, factorization, divisors and the Kronecker symbol."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

_SIEVE_LIMIT = 10**6
_MAX_N = 2**63

Factorization = tuple  # tuple[tuple[int, int], ...], ascending by prime


def prime_sieve(limit: int) -> list[int]:
    """All primes ``p <= limit`` in ascending order."""
    if limit < 2:
        return []
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).tolist()


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(prime_sieve(_SIEVE_LIMIT))


def factorize(n: int) -> Factorization:
    """Exact factorization of ``1 <= n <= 2**63`` as ``((p, e), ...)``.

    Trial division by the cached primes below 10**6; a leftover cofactor
    above 10**12 is handed to sympy.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    if n > _MAX_N:
        raise ValueError(f"factorize is limited to n <= 2**63, got {n}")
    out: list[tuple[int, int]] = []
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        if n < _SIEVE_LIMIT**2:
            out.append((n, 1))
        else:
            from sympy import factorint

            out.extend(sorted(factorint(n).items()))
    return tuple(out)


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(abs(n))]


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n), defined for every pair of integers.

    (d/2) is 0 for even d, +1 for d = +-1 mod 8 and -1 for d = +-3 mod 8;
    (d/-1) is the sign of d; (d/0) is 1 only for d = +-1.
    """
    d, n = int(d), int(n)
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if d % 2 == 0:
            return 0
        n >>= v
        if v % 2 and d % 8 in (3, 5):
            result = -result
    return result * jacobi(d, n)
