import random
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffk.errors import InvalidParameter
from ffk.ztorsion import (boundary_composes_to_zero, count_invertible_modules, det_int, matmul,
                          minor_gcd, predicted_level_count, prime_to_p, rank_int,
                          smith_normal_form)

matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


def check_snf(a):
    snf = smith_normal_form(a)
    assert matmul(matmul(snf.U, a), snf.V) == snf.diagonal()
    assert abs(det_int(snf.U)) == 1 and abs(det_int(snf.V)) == 1
    ds = snf.divisors
    assert all(x > 0 for x in ds)
    assert all(ds[i + 1] % ds[i] == 0 for i in range(len(ds) - 1))
    assert snf.rank == rank_int(a)
    return snf


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_smith_form_properties(a):
    snf = check_snf(a)
    if snf.rank:
        assert prod(snf.divisors) == minor_gcd(a, snf.rank)


def test_small_example():
    assert smith_normal_form([[2, 4], [6, 8]]).divisors == (2, 4)


def test_zero_matrix():
    assert smith_normal_form([[0, 0], [0, 0]]).divisors == ()


def test_det_against_permutation_expansion():
    rng = random.Random(7)
    from itertools import permutations
    for _ in range(30):
        n = rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        total = 0
        for perm in permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            total += (-1) ** inv * prod(a[i][perm[i]] for i in range(n))
        assert det_int(a) == total


def test_prime_to_p():
    assert prime_to_p(24, 2) == 3
    assert prime_to_p(-45, 3) == 5
    assert prime_to_p(7, 5) == 7


EXPECTED = {
    ("trefoil", 2, 1): 3, ("trefoil", 2, 2): 13, ("trefoil", 3, 1): 7, ("trefoil", 5, 1): 21,
    ("figure-eight", 2, 1): 1, ("figure-eight", 2, 2): 5, ("figure-eight", 3, 1): 1,
    ("figure-eight", 5, 1): 11,
    ("torus(2,5)", 2, 1): 11, ("torus(2,5)", 2, 2): 205, ("torus(2,5)", 3, 1): 61,
    ("torus(2,5)", 5, 1): 521,
    ("5_2", 3, 1): 11, ("5_2", 5, 1): 37, ("unknot", 3, 1): 1,
}


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_counts(knots, key):
    name, p, nu = key
    res = count_invertible_modules(knots[name], p, nu)
    assert res.count == EXPECTED[key] == abs(res.delta_q)
    assert not res.p_divides_c0


def test_excluded_prime(knots):
    res = count_invertible_modules(knots["5_2"], 2, 1)
    assert res.p_divides_c0
    assert res.delta_q == 4
    assert res.count == 1


def test_boundary_map(knots):
    for d in knots.values():
        for q in (2, 3, 4, 5):
            assert boundary_composes_to_zero(d, q)


def test_predicted_level_count_reaches_the_count(knots):
    res = count_invertible_modules(knots["trefoil"], 3, 1)
    assert predicted_level_count(res.elementary_divisors, 3, 1) == 1
    assert predicted_level_count(res.elementary_divisors, 3, 6) == 7
    assert gcd(7, 3 ** 6 - 1) == 7


@pytest.mark.parametrize("p, nu", [(4, 1), (2, 0)])
def test_bad_parameters(trefoil, p, nu):
    with pytest.raises(InvalidParameter):
        count_invertible_modules(trefoil, p, nu)
