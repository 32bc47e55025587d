"""Positive definite binary quadratic forms and the form class group."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from .arith import factorize
from .scope import check_fundamental, check_N


@dataclass(frozen=True, order=True)
class QuadForm:
    """a x^2 + b x y + c y^2 with a > 0, b^2 - 4ac < 0 and gcd(a, b, c) = 1."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"{self} is not positive definite")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"{self} is not primitive")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def transform(self, p: int, q: int, r: int, s: int) -> "QuadForm":
        """f(p x + q y, r x + s y) for an integer matrix with ps - qr = 1."""
        if p * s - q * r != 1:
            raise ValueError("transformation must lie in SL2(Z)")
        a, b, c = self
        return QuadForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def is_reduced(self) -> bool:
        a, b, c = self
        if not abs(b) <= a <= c:
            return False
        return b >= 0 if (abs(b) == a or a == c) else True


def principal_form(D: int) -> QuadForm:
    k = D % 2
    return QuadForm(1, k, (k - D) // 4)


def reduce(f: QuadForm) -> QuadForm:
    """The unique reduced form properly equivalent to f."""
    a, b, c = f
    while True:
        # normalize b into (-a, a]
        k = (a - b) // (2 * a)
        b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def _check_negative_disc(D: int):
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"D={D} is not a negative discriminant")


def reduced_forms(D: int) -> list[QuadForm]:
    """Primitive reduced forms of discriminant D, principal form first."""
    _check_negative_disc(D)
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2 or (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and a == c) or gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    out.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _coprime_representative(g: QuadForm, m: int) -> QuadForm:
    """An equivalent form whose leading coefficient is coprime to m."""
    for bound in itertools.count(1):
        for x in range(0, bound + 1):
            for y in (bound - x, x - bound):
                if gcd(x, y) == 1 and gcd(g(x, y), m) == 1:
                    _, s, r = _xgcd(x, y)  # s x + r y = 1
                    return g.transform(x, -r, y, s)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Reduced representative of the product class (Dirichlet composition)."""
    D = f.discriminant
    if g.discriminant != D:
        raise ValueError(f"discriminant mismatch: {D} vs {g.discriminant}")
    a1, b1, _ = f
    if gcd(gcd(a1, g.a), (b1 + g.b) // 2) != 1:
        g = _coprime_representative(g, a1)
    a2, b2, _ = g
    # u a1 + v a2 + w (b1 + b2)/2 = 1
    e1, u1, v1 = _xgcd(a1, a2)
    e, s, w = _xgcd(e1, (b1 + b2) // 2)
    u, v = s * u1, s * v1
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) % (2 * a1 * a2)
    A = a1 * a2
    return reduce(QuadForm(A, B, (B * B - D) // (4 * A)))


def prime_discriminant_factorization(D: int) -> list[int]:
    """Unique factorization of a fundamental D into prime discriminants.

    The even factor (-4, 8 or -8) comes first when present, then p* = +-p
    (p* = 1 mod 4) for the odd primes in ascending order.
    """
    check_fundamental(D)
    odd = [p if p % 4 == 1 else -p for p, _ in factorize(abs(D)) if p != 2]
    rest = D
    for p in odd:
        rest //= p
    if rest not in (1, -4, 8, -8):
        raise AssertionError(f"unexpected residual factor {rest} for D={D}")
    return ([rest] if rest != 1 else []) + odd


def genus_splittings(D: int) -> list[tuple[int, int]]:
    """The 2^(k-1) unordered factorizations D = D1 * D2 into discriminants.

    D1 runs over products of prime discriminants not involving the last
    one, so the trivial splitting (1, D) comes first.
    """
    P = prime_discriminant_factorization(D)
    out = []
    for mask in range(1 << (len(P) - 1)):
        D1 = 1
        for i, p in enumerate(P[:-1]):
            if mask >> i & 1:
                D1 *= p
        out.append((D1, D // D1))
    return out


@dataclass(frozen=True)
class ClassGroup:
    """Form class group of a negative fundamental discriminant.

    ``forms[i]`` is the reduced representative of class i (class 0 is
    principal); ``table[i][j]`` is the index of the product class. The
    cyclic decomposition is ``basis`` (class indices) with orders
    ``invariant_factors`` (ascending), and ``coords[i]`` are the exponents
    of class i on that basis.
    """

    D: int
    forms: tuple[QuadForm, ...]
    table: tuple[tuple[int, ...], ...]
    basis: tuple[int, ...]
    invariant_factors: tuple[int, ...]
    coords: tuple[tuple[int, ...], ...]
    prime_discriminants: tuple[int, ...]
    splittings: tuple[tuple[int, int], ...]
    index: dict = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def k(self) -> int:
        return len(self.prime_discriminants)

    @property
    def num_genera(self) -> int:
        return 2 ** (self.k - 1)

    @property
    def exponent(self) -> int:
        return max(self.invariant_factors, default=1)

    def class_of(self, f: QuadForm) -> int:
        return self.index[reduce(f)]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power(self, i: int, n: int) -> int:
        out = 0
        for _ in range(n):
            out = self.table[out][i]
        return out

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != 0:
            x = self.table[x][i]
            n += 1
        return n

    def inverse(self, i: int) -> int:
        return self.table[i].index(0)

    def squares(self) -> set[int]:
        return {self.table[i][i] for i in range(self.h)}


def _cyclic_decomposition(table, h: int) -> tuple[list[int], list[int], list[tuple[int, ...]]]:
    """Greedy basis: repeatedly take an element of largest order modulo the
    span so far, corrected by a span element so its order equals that
    quotient order."""

    def span_with(S: set[int], g: int) -> set[int]:
        out, x = set(S), g
        while True:
            new = {table[x][s] for s in S}
            if new <= out:
                return out
            out |= new
            x = table[x][g]

    def pw(g: int, n: int) -> int:
        out = 0
        for _ in range(n):
            out = table[out][g]
        return out

    basis: list[int] = []
    S = {0}
    while len(S) < h:
        best, best_q = None, 0
        for x in range(h):
            q, y = 1, x
            while y not in S:
                y = table[y][x]
                q += 1
            if q > best_q:
                best, best_q = x, q
        target = pw(best, best_q)
        inv_target = table[target].index(0)
        fix = next(s for s in sorted(S) if pw(s, best_q) == inv_target)
        g = table[best][fix]
        basis.append(g)
        S = span_with(S, g)
    orders = []
    for g in basis:
        n, x = 1, g
        while x != 0:
            x = table[x][g]
            n += 1
        orders.append(n)
    basis_sorted = sorted(zip(orders, basis))
    orders = [o for o, _ in basis_sorted]
    basis = [g for _, g in basis_sorted]
    coords: list[tuple[int, ...] | None] = [None] * h
    for exps in itertools.product(*(range(o) for o in orders)):
        x = 0
        for g, e in zip(basis, exps):
            x = table[x][pw(g, e)]
        if coords[x] is not None:
            raise AssertionError("basis is not independent")
        coords[x] = exps
    if any(c is None for c in coords):
        raise AssertionError("basis does not span")
    return basis, orders, coords  # type: ignore[return-value]


@lru_cache(maxsize=256)
def class_group(D: int) -> ClassGroup:
    """Class group of a negative fundamental discriminant D."""
    _check_negative_disc(D)
    check_fundamental(D)
    forms = reduced_forms(D)
    index = {f: i for i, f in enumerate(forms)}
    h = len(forms)
    table = tuple(tuple(index[compose(f, g)] for g in forms) for f in forms)
    for i in range(h):
        if table[0][i] != i or 0 not in table[i]:
            raise AssertionError(f"group law failure at class {forms[i]}")
        for j in range(i):
            if table[i][j] != table[j][i]:
                raise AssertionError("composition is not commutative")
    basis, orders, coords = _cyclic_decomposition(table, h)
    return ClassGroup(
        D=D,
        forms=tuple(forms),
        table=table,
        basis=tuple(basis),
        invariant_factors=tuple(orders),
        coords=tuple(coords),
        prime_discriminants=tuple(prime_discriminant_factorization(D)),
        splittings=tuple(genus_splittings(D)),
        index=index,
    )


def is_solvable(N: int) -> bool:
    """One form per genus: h(-4N) equals the number of genera 2^(k-1)."""
    G = class_group(check_N(N))
    return G.h == G.num_genera


def represented_values_coprime(f: QuadForm, m: int):
    """Yield (n, x, y) with n = f(x, y) > 0 and gcd(n, m) = 1, in increasing
    n, ties broken by smallest |y| then smallest |x|; each n once."""
    seen: set[int] = set()
    bound = max(f.a, f.c)
    lo = 0
    D = f.discriminant
    while True:
        found = []
        ymax = isqrt(4 * f.a * bound // -D)
        for y in range(-ymax, ymax + 1):
            disc = 4 * f.a * bound + D * y * y
            s = isqrt(disc)
            for x in range(-((f.b * y + s) // (2 * f.a)), (s - f.b * y) // (2 * f.a) + 1):
                n = f(x, y)
                if lo < n <= bound and gcd(n, m) == 1:
                    found.append((n, abs(y), abs(x), x, y))
        found.sort()
        for n, _, _, x, y in found:
            if n not in seen:
                seen.add(n)
                yield n, x, y
        lo, bound = bound, 2 * bound


def represented_value_coprime(f: QuadForm, m: int) -> int:
    """Smallest n = f(x, y) > 0 with gcd(n, m) = 1."""
    n, _, _ = next(represented_values_coprime(f, m))
    return n
