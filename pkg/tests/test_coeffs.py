import random

import numpy as np
import pytest

from genuslab.characters import character_group
from genuslab.coeffs import (
    CoeffTable, build_coeff_table, cache_path, decomposition_holds, hecke_coeffs, ideal_counts_match,
    kronecker_factorization_check, load_or_build, read_cache, reconstruct_reps, rep_counts_form,
    unit_count, write_cache,
)
from genuslab.quadforms import QuadForm, class_group
from genuslab.scope import OutOfScopeError, scope_Ns
from conftest import ACCEPT_NS, brute_rep_count


def test_unit_count():
    assert unit_count(-4) == 4 and unit_count(-20) == 2 and unit_count(-3) == 6
    with pytest.raises(ValueError):
        unit_count(5)


def test_rep_counts_form_examples():
    assert rep_counts_form(QuadForm(1, 0, 5), 21)[1] == 2
    assert rep_counts_form(QuadForm(1, 0, 5), 21)[21] == 8
    assert rep_counts_form(QuadForm(2, 2, 3), 3)[3] == 4
    assert rep_counts_form(QuadForm(1, 0, 1), 5)[5] == 8


def test_table_examples():
    T = build_coeff_table(5, 30)
    assert (T.counts[0, 21], T.counts[1, 21], T.a[21], T.r[21]) == (4, 0, 4, 8)
    assert (T.counts[0, 3], T.counts[1, 3], T.a[3], T.r[3]) == (0, 2, 2, 0)
    T1 = build_coeff_table(1, 5)
    assert (T1.counts[0, 1], T1.r[1], T1.w) == (1, 4, 4)


def test_table_rejects_out_of_scope():
    with pytest.raises(OutOfScopeError):
        build_coeff_table(3, 10)
    with pytest.raises(OutOfScopeError):
        build_coeff_table(12, 10)


@pytest.mark.parametrize("N", [1, 2, 5, 14, 21])
def test_r_matches_brute_force(N):
    T = build_coeff_table(N, 120)
    assert [int(v) for v in T.r[1:]] == [brute_rep_count(1, 0, N, n) for n in range(1, 121)]


@pytest.mark.parametrize("N", scope_Ns(100))
def test_ideal_counts_and_decomposition(N):
    T = build_coeff_table(N, 2000)
    for i, f in enumerate(T.group.forms):
        assert np.all(rep_counts_form(f, 2000) % T.w == 0)
    assert ideal_counts_match(T)
    assert decomposition_holds(T)


def test_hecke_coeffs_examples():
    T = build_coeff_table(5, 30)
    triv, chi = character_group(T.group)
    assert hecke_coeffs(triv, T).tolist() == [int(v) for v in T.a[1:]]
    b = hecke_coeffs(chi, T)
    assert b[3] == -2 and b[21] == 4


def test_reconstruct_examples():
    T = build_coeff_table(5, 30)
    r = reconstruct_reps(T, character_group(T.group))
    assert r[21] == 8 and r[3] == 0
    T14 = build_coeff_table(14, 10)
    chars = character_group(T14.group)
    assert all(hecke_coeffs(c, T14).to_complex()[1] == 1 for c in chars)
    assert reconstruct_reps(T14, chars)[1] == 2
    with pytest.raises(ValueError):
        reconstruct_reps(T14, chars[:3])


def test_hecke_group_mismatch():
    T = build_coeff_table(5, 10)
    chi = character_group(class_group(-56))[1]
    with pytest.raises(ValueError):
        hecke_coeffs(chi, T)


def test_conjugate_characters_give_conjugate_rows():
    T = build_coeff_table(26, 3000)
    for chi in character_group(T.group):
        b = hecke_coeffs(chi, T).to_complex()
        bc = hecke_coeffs(chi.conjugate(), T).to_complex()
        assert np.allclose(b, np.conj(bc))


def test_a_multiplicative():
    T = build_coeff_table(14, 10**4)
    rng = random.Random(3)
    import math

    done = 0
    while done < 500:
        m, n = rng.randint(1, 100), rng.randint(1, 100)
        if math.gcd(m, n) == 1:
            assert T.a[m * n] == T.a[m] * T.a[n]
            done += 1


def test_kronecker_factorization_examples():
    T = build_coeff_table(5, 10**4)
    assert kronecker_factorization_check(5, (-4, 5), T)
    assert kronecker_factorization_check(5, (1, -20), T)


@pytest.mark.parametrize("N", ACCEPT_NS)
def test_kronecker_all_splittings(N, tables_1e4):
    T = tables_1e4[N]
    assert all(kronecker_factorization_check(N, s, T) for s in T.group.splittings)


def test_cache_round_trip(tmp_path):
    T = build_coeff_table(14, 500)
    path = write_cache(T, cache_path(tmp_path, 14, 500))
    assert path.read_text().splitlines()[0] == "QFC1,N=14,limit=500,h=4,w=2"
    expected = [brute_rep_count(*f, 3) // 2 for f in T.group.forms]
    assert path.read_text().splitlines()[3] == ",".join(map(str, [3] + expected)) == "3,0,0,1,1"
    assert read_cache(path, 14, 500) == T
    with pytest.raises(ValueError):
        read_cache(path, 14, 400)
    assert load_or_build(14, 500, tmp_path) == T


def test_cache_rejects_bad_header(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("QFC1,N=5,limit=2,h=3,w=2\n1,1,0\n2,0,1\n")
    with pytest.raises(ValueError):
        read_cache(p, 5, 2)
    p.write_text("XYZ\n")
    with pytest.raises(ValueError):
        read_cache(p, 5, 2)
