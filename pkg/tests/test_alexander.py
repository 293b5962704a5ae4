import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PD, TABLE
from ffk.alexander import (AlexPoly, alexander_from_matrix, alexander_polynomial, evaluate,
                           fox_derivative)
from ffk.diagram import add_kink, mirror, parse_pd
from ffk.laurent import LaurentPoly


@pytest.mark.parametrize("name", sorted(TABLE))
@pytest.mark.parametrize("method", ["dehn", "fox"])
def test_table_values(knots, name, method):
    assert alexander_polynomial(knots[name], method).coeffs == TABLE[name]


def test_corpus_expected_values(corpus):
    for entry in corpus:
        d = entry.diagram()
        assert alexander_polynomial(d, "dehn").coeffs == entry.expected, entry.name
        assert alexander_polynomial(d, "fox").coeffs == entry.expected, entry.name


def test_value_at_one_and_symmetry(knots):
    for d in knots.values():
        poly = alexander_polynomial(d)
        assert abs(poly(1)) == 1
        assert poly.is_palindromic()
        assert poly.c0 > 0


def test_mirror_invariance(knots):
    for d in knots.values():
        assert alexander_polynomial(mirror(d)) == alexander_polynomial(d)


@settings(max_examples=25, deadline=None)
@given(name=st.sampled_from(sorted(PD)),
       kinks=st.lists(st.tuples(st.integers(1, 40), st.integers(0, 3)), min_size=1, max_size=2))
def test_kinks_do_not_change_the_polynomial(name, kinks):
    d = parse_pd(PD[name])
    for edge, variant in kinks:
        d = add_kink(d, (edge - 1) % max(d.edge_count, 1) + 1, variant)
    assert alexander_polynomial(d, "dehn").coeffs == TABLE[name]


def test_fox_derivative_of_commutator():
    # d/dx1 of x1 x2 x1^-1 x2^-1 with everything abelianized to t: 1 - t
    word = ((1, 1), (2, 1), (1, -1), (2, -1))
    assert fox_derivative(word, 1) == LaurentPoly({0: 1, 1: -1})
    assert fox_derivative(word, 2) == LaurentPoly({1: 1, 0: -1})


def test_empty_matrix_gives_one():
    assert alexander_from_matrix([]) == AlexPoly((1,))


def test_evaluate_is_horner():
    assert evaluate(AlexPoly((1, -1, 1)), 2) == 3
    assert evaluate(AlexPoly((2, -3, 2)), 3) == 11


def test_unknown_method(trefoil):
    with pytest.raises(ValueError):
        alexander_polynomial(trefoil, "magic")
