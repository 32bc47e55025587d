import math

import mpmath
import pytest

from genuslab import analytic
from genuslab.analytic import (
    A1, A1_B1, EULER_GAMMA, L1, Lprime_1, Lprime_over_L, alpha_N, constant_consistency,
    constants_report, theorem13_constant, theorem13_constant_exact, zeta_prime_2,
)
from genuslab.arith import kronecker
from genuslab.scope import scope_Ns
from conftest import DISCS


def mp_L(D):
    chi = [kronecker(D, n) for n in range(abs(D))]
    return lambda s: mpmath.dirichlet(s, chi)


def hurwitz_L1(D):
    """L(1, chi) = -(1/q) sum_a chi(a) digamma(a/q)."""
    q = abs(D)
    return -sum(kronecker(D, a) * mpmath.digamma(mpmath.mpf(a) / q) for a in range(1, q)) / q


def hurwitz_Lprime1(D):
    """L'(1, chi) from the Laurent data of the Hurwitz zeta function at s = 1."""
    q = abs(D)
    x = [mpmath.mpf(a) / q for a in range(1, q)]
    chi = [kronecker(D, a) for a in range(1, q)]
    g1 = sum(c * mpmath.stieltjes(1, t) for c, t in zip(chi, x))
    psi = sum(c * mpmath.digamma(t) for c, t in zip(chi, x))
    return (-g1 + mpmath.log(q) * psi) / q


def test_L1_examples():
    assert abs(L1(-4)[0] - math.pi / 4) < 1e-15
    assert abs(L1(-8)[1] - math.pi / (2 * math.sqrt(2))) < 1e-8
    f, s = L1(-20)
    assert abs(f - math.pi / math.sqrt(5)) < 1e-15 and abs(s - f) < 1e-8


@pytest.mark.parametrize("D", DISCS)
def test_L1_series_matches_hurwitz_oracle(D):
    assert abs(L1(D)[1] - float(hurwitz_L1(D))) < 1e-8


@pytest.mark.parametrize("D", [-4, -8, -20, -24, -56])
def test_Lprime_matches_hurwitz_oracle(D):
    value, converged = Lprime_1(D)
    assert converged
    assert abs(value - float(hurwitz_Lprime1(D))) < 1e-6


def test_Lprime_over_L_minus4_difference_quotient():
    L = mp_L(-4)
    eps = mpmath.mpf("1e-4")
    oracle = (L(1 + eps) - L(1 - eps)) / (2 * eps) / hurwitz_L1(-4)
    assert abs(Lprime_over_L(-4) - float(oracle)) < 1e-3


def test_Lprime_stable_under_doubled_cutoff():
    g = lambda t: __import__("numpy").log(t) / t
    dg = lambda t: (1 - __import__("numpy").log(t)) / (t * t)
    for D in DISCS:
        a = analytic._periodic_sum(D, abs(D) * 10**4, g, dg)
        b = analytic._periodic_sum(D, abs(D) * 2 * 10**4, g, dg)
        assert abs(a - b) < 1e-3
        assert math.isfinite(Lprime_over_L(D))


def test_zeta_prime_2():
    z = zeta_prime_2()
    assert z < 0 and abs(z) < math.pi**2 / 6
    assert abs(z - (-0.9375482543)) < 1e-8
    assert abs(z - float(mpmath.zeta(2, derivative=1))) < 1e-12


def test_alpha_pieces():
    assert abs(math.log(2) / 3 - 0.2310491) < 1e-7
    assert abs(2 * EULER_GAMMA - 1.1544313) < 1e-7
    # alpha_N assembled from its terms
    N = 5
    expected = (-1 + 2 * EULER_GAMMA + math.log(2) / 3 + math.log(5) / 6
                + 2 * Lprime_over_L(-20) - 12 / math.pi**2 * zeta_prime_2())
    assert abs(alpha_N(N) - expected) < 1e-12


def test_alpha_prime_sum_grows_with_prime_factors():
    s = lambda N: sum(math.log(p) / (p + 1) for p in analytic._primes_2N(N))
    assert s(1) < s(5) < s(65)


def test_A1_examples():
    assert abs(A1(1) - 0.25) < 1e-12
    assert abs(A1(2) - 0.5) < 1e-12
    assert abs(A1(5) - 2 / 3) < 1e-12
    a, b = A1_B1(5)
    assert abs(b - a * alpha_N(5)) < 1e-12


def test_theorem13_constant_examples():
    assert theorem13_constant_exact(1) == 4
    assert theorem13_constant_exact(5) == pytest.approx(4 / 3) and theorem13_constant_exact(5).denominator == 3
    assert theorem13_constant_exact(14) == 0.5
    assert theorem13_constant(2) == pytest.approx(2)


def test_theorem13_constant_depends_on_prime_support():
    for N, M in [(5, 10), (1, 2), (7 * 2, 7 * 2), (13, 26), (3 * 5 * 2, 5 * 3 * 2)]:
        if N % 4 == 3 or M % 4 == 3:
            continue
        assert N * theorem13_constant(N) == pytest.approx(M * theorem13_constant(M))


@pytest.mark.parametrize("N", scope_Ns(100))
def test_constant_consistency(N):
    assert constant_consistency(N)


def test_report_documents_paper_L1_value():
    rep = constants_report(2)
    assert rep.L1_no_units == pytest.approx(2 * rep.L1_formula)
    rep1 = constants_report(1)
    assert rep1.L1_no_units == pytest.approx(4 * rep1.L1_formula)
    assert rep.thm13_constant > 0 and rep.consistent
