from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffk.errors import InvalidParameter
from ffk.finitefield import (FieldCtx, embed, embedding, is_irreducible, make_field,
                             smallest_irreducible)

SMALL = [(2, 1), (2, 3), (2, 4), (3, 2), (5, 2), (7, 1)]


def test_moduli():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(2, 4) == (1, 0, 0, 1, 1)


def test_irreducibility_against_root_search():
    # degree <= 3 polynomials are irreducible iff they have no root
    for p in (2, 3, 5):
        for c0 in range(p):
            for c1 in range(p):
                f = (c0, c1, 1)
                roots = [x for x in range(p) if (c0 + c1 * x + x * x) % p == 0]
                assert is_irreducible(f, p) == (not roots)


@pytest.mark.parametrize("p, m", SMALL)
def test_scalar_and_batch_multiplication_agree(p, m):
    f = make_field(p, m)
    xs = list(f.elements())
    a = np.repeat(xs, len(xs))
    b = np.tile(xs, len(xs))
    batch = f.from_array(f.mul_array(f.to_array(a), f.to_array(b)))
    scalar = [f.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert batch.tolist() == scalar


@pytest.mark.parametrize("p, m", SMALL)
def test_inverse_and_frobenius(p, m):
    f = make_field(p, m)
    for a in f.units():
        assert f.mul(a, f.inv(a)) == 1
        assert f.frob(a, 1) == f.pow(a, p)
        assert f.frob(f.frob(a, 1), -1) == a
        assert f.pow(a, f.order - 1) == 1


def test_multiplicative_group_is_cyclic():
    f = make_field(2, 4)
    orders = set()
    for a in f.units():
        k, x = 1, a
        while x != 1:
            x, k = f.mul(x, a), k + 1
        orders.add(k)
    assert 15 in orders


def test_pow_array_matches_scalar():
    f = make_field(3, 3)
    xs = np.arange(1, f.order)
    out = f.from_array(f.pow_array(f.to_array(xs), -1)).tolist()
    assert out == [f.inv(int(x)) for x in xs]


def test_embedding_is_a_ring_map():
    src, dst = make_field(2, 2), make_field(2, 4)
    emb = embedding(src, dst)
    assert emb.root == 10
    for a in src.elements():
        for b in src.elements():
            assert emb(src.mul(a, b)) == dst.mul(emb(a), emb(b))
            assert emb(src.add(a, b)) == dst.add(emb(a), emb(b))


def test_field_elem_operators():
    f = make_field(3, 2)
    a, b = f(4), f(7)
    assert (a * b) / b == a
    assert a + b - b == a
    assert (a ** 8).value == 1
    assert embed(a, f, make_field(3, 4)).ctx.m == 4


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 12), (3, 7), (5, 5), (2, 16)]), st.data())
def test_axioms_sampled_in_large_fields(pm, data):
    f = make_field(*pm)
    a, b, c = (data.draw(st.integers(0, f.order - 1)) for _ in range(3))
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    k = data.draw(st.integers(0, pm[1]))
    assert f.frob(f.mul(a, b), k) == f.mul(f.frob(a, k), f.frob(b, k))


@pytest.mark.parametrize("p, m", [(2, 6), (3, 4)])
def test_frobenius_fixed_points(p, m):
    f = make_field(p, m)
    arr = f.to_array(np.arange(f.order))
    for nu in range(1, m + 1):
        fixed = int((f.frob_array(arr, nu) == arr).all(axis=1).sum())
        assert fixed == p ** gcd(nu, m)


def test_rejections():
    with pytest.raises(InvalidParameter):
        FieldCtx(4, 1)
    with pytest.raises(InvalidParameter):
        FieldCtx(2, 2, modulus=(1, 0, 1))
    with pytest.raises(InvalidParameter):
        make_field(2, 30)
    with pytest.raises(InvalidParameter):
        embedding(make_field(2, 2), make_field(2, 3))
    with pytest.raises(ZeroDivisionError):
        make_field(2, 3).inv(0)
