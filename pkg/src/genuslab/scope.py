"""The single gate deciding which N (and which discriminants) are handled."""
from __future__ import annotations

from .arith import is_squarefree


class OutOfScopeError(ValueError):
    """N or D lies outside the fundamental-discriminant case handled here."""


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def check_fundamental(D: int) -> int:
    if not is_fundamental(D):
        raise OutOfScopeError(
            f"D={D} is not a fundamental discriminant; orders other than the "
            "maximal order are not supported"
        )
    return D


def check_N(N: int) -> int:
    """Return the discriminant -4N, or raise for out-of-scope N.

    In scope: N >= 1 squarefree with -N not 1 mod 4 (N not 3 mod 4), so
    that Z[sqrt(-N)] is the maximal order and -4N is fundamental.
    """
    N = int(N)
    if N < 1:
        raise OutOfScopeError(f"N={N} must be a positive integer")
    if not is_squarefree(N):
        raise OutOfScopeError(f"N={N} is not squarefree")
    if N % 4 == 3:
        raise OutOfScopeError(
            f"N={N} has -N = 1 mod 4: Z[sqrt(-N)] is not the maximal order "
            "(case excluded, requires L-series attached to orders)"
        )
    return -4 * N


def in_scope(N: int) -> bool:
    try:
        check_N(N)
    except OutOfScopeError:
        return False
    return True


def scope_Ns(nmax: int) -> list[int]:
    return [N for N in range(1, nmax + 1) if in_scope(N)]
