"""Characters of the form class group and the genus characters among them.

A character value e^(2 pi i t) is stored exactly as its angle t, a Fraction
in [0, 1); products of values add angles mod 1.
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import cyclo
from .arith import kronecker
from .quadforms import ClassGroup, represented_value_coprime, represented_values_coprime


@dataclass(frozen=True)
class IdealClassCharacter:
    D: int
    angles: tuple[Fraction, ...]
    splitting: tuple[int, int] | None = None
    label: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.angles[0] != 0:
            raise ValueError("a character is 1 on the principal class")

    @property
    def h(self) -> int:
        return len(self.angles)

    @property
    def order(self) -> int:
        return lcm(*(a.denominator for a in self.angles))

    @property
    def is_genus(self) -> bool:
        return classify_genus(self)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def value(self, i: int) -> complex:
        return cmath.exp(2j * cmath.pi * self.angles[i])

    def exact(self, i: int) -> tuple[int, int]:
        """Value on class i as (k, m), meaning e^(2 pi i k / m)."""
        a = self.angles[i]
        return a.numerator, a.denominator

    def real_values(self) -> tuple[int, ...]:
        if not self.is_genus:
            raise ValueError("character takes non-real values")
        return tuple(1 if a == 0 else -1 for a in self.angles)

    def conjugate(self) -> "IdealClassCharacter":
        return IdealClassCharacter(
            self.D, tuple((-a) % 1 for a in self.angles), self.splitting,
            tuple(-t for t in self.label),
        )

    def __mul__(self, other: "IdealClassCharacter") -> "IdealClassCharacter":
        if other.D != self.D:
            raise ValueError("characters of different groups")
        return IdealClassCharacter(self.D, tuple((a + b) % 1 for a, b in zip(self.angles, other.angles)))

    def describe(self) -> str:
        vals = ",".join(_fmt_angle(a) for a in self.angles)
        return f"order {self.order}: [{vals}]"


def _fmt_angle(a: Fraction) -> str:
    return {Fraction(0): "1", Fraction(1, 2): "-1", Fraction(1, 4): "i", Fraction(3, 4): "-i"}.get(
        a, f"e({a})"
    )


def _dual(G: ClassGroup) -> list[IdealClassCharacter]:
    chars = []
    for label in itertools.product(*(range(d) for d in G.invariant_factors)):
        angles = tuple(
            sum((Fraction(t * e, d) for t, e, d in zip(label, c, G.invariant_factors)), Fraction(0)) % 1
            for c in G.coords
        )
        chars.append(IdealClassCharacter(G.D, angles, None, label))
    return chars


def character_group(G: ClassGroup) -> list[IdealClassCharacter]:
    """All h characters of G, trivial first; genus characters carry their splitting."""
    chars = _dual(G)
    matching = match_splittings(G, chars)
    by_angles = {chars[i].angles: split for split, i in matching.items()}
    return [
        IdealClassCharacter(c.D, c.angles, by_angles.get(c.angles), c.label) for c in chars
    ]


def _check_splitting(G: ClassGroup, splitting) -> tuple[int, int]:
    D1, D2 = splitting
    for pair in G.splittings:
        if pair == (D1, D2) or pair == (D2, D1):
            return pair
    raise ValueError(f"{splitting} is not a genus splitting of {G.D}")


def genus_character_from_splitting(G: ClassGroup, splitting) -> IdealClassCharacter:
    """chi_{D1,D2}: on a class, kronecker(D1, n) for any n it represents prime to D."""
    D1, D2 = _check_splitting(G, splitting)
    m = abs(G.D)
    angles = tuple(
        Fraction(0) if kronecker(D1, represented_value_coprime(f, m)) == 1 else Fraction(1, 2)
        for f in G.forms
    )
    return IdealClassCharacter(G.D, angles, (D1, D2))


def genus_value_samples(G: ClassGroup, splitting, i: int, count: int = 20) -> set[int]:
    """kronecker(D1, n) over the first ``count`` represented values n of class i prime to D."""
    D1, _ = _check_splitting(G, splitting)
    values = itertools.islice(represented_values_coprime(G.forms[i], abs(G.D)), count)
    return {kronecker(D1, n) for n, _, _ in values}


def classify_genus(chi: IdealClassCharacter) -> bool:
    """Genus characters are exactly the characters of order at most two."""
    return all(a in (0, Fraction(1, 2)) for a in chi.angles)


def match_splittings(
    G: ClassGroup, chars: list[IdealClassCharacter] | None = None
) -> dict[tuple[int, int], int]:
    """Map each splitting (D1, D2) to the index of the equal real character."""
    chars = _dual(G) if chars is None else chars
    real = {c.angles: i for i, c in enumerate(chars) if classify_genus(c)}
    out = {}
    for split in G.splittings:
        angles = genus_character_from_splitting(G, split).angles
        if angles not in real:
            raise AssertionError(f"splitting {split} matches no character of {G.D}")
        out[split] = real[angles]
    if len(set(out.values())) != len(out) or len(out) != len(real):
        raise AssertionError(f"splittings and real characters of {G.D} are not in bijection")
    return out


def character_sum(angles, m: int | None = None) -> np.ndarray:
    """Exact sum of e^(2 pi i t) over the given angles, as a vector in Z[zeta_m]."""
    angles = list(angles)
    m = m or lcm(1, *(a.denominator for a in angles))
    vec = np.zeros(m, dtype=np.int64)
    for a in angles:
        vec[int(a * m) % m] += 1
    return cyclo.reduce(vec, m)


def inner_product(chi: IdealClassCharacter, psi: IdealClassCharacter) -> np.ndarray:
    """sum_i chi(c_i) conj(psi(c_i)), exactly."""
    return character_sum((a - b) % 1 for a, b in zip(chi.angles, psi.angles))


def orthogonality_holds(chars: list[IdealClassCharacter]) -> bool:
    h = len(chars)
    for i, chi in enumerate(chars):
        for j, psi in enumerate(chars):
            s = inner_product(chi, psi)
            if s[0] != (h if i == j else 0) or np.any(s[1:]):
                return False
    return True


def inversion_holds(chars: list[IdealClassCharacter]) -> bool:
    """(1/h) sum_chi chi(c_i) = [i = 0] for every class i."""
    h = len(chars)
    for i in range(h):
        s = character_sum(c.angles[i] for c in chars)
        if s[0] != (h if i == 0 else 0) or np.any(s[1:]):
            return False
    return True
