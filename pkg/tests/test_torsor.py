import random

import pytest

from ffk.diagram import parse_pd
from ffk.errors import BudgetExceeded, InvalidParameter
from ffk.locsys import stable_class_count
from ffk.presentation import wirtinger_presentation
from ffk.torsor import (GroupSpec, canonical_form, count_torsors, determinant_image, eliminate,
                        embed_solution, evaluate_word, make_group, semidirect_mul,
                        twisted_relations, verify_solution)

# g sigma^2(g) sigma(g)^-1
TREFOIL_EQUATION = ((0, 0, 1), (0, 2, 1), (0, 1, -1))


def test_trefoil_reduces_to_one_equation(trefoil):
    elim = eliminate(wirtinger_presentation(trefoil))
    assert len(elim.free) == 1
    forms = {canonical_form(r) for r in elim.residuals}
    assert forms == {canonical_form(TREFOIL_EQUATION)}


def test_unknot_has_no_relations():
    d = parse_pd("unknot")
    assert twisted_relations(wirtinger_presentation(d)) == []
    res = count_torsors(d, make_group("GL", 2, 2, 1), 1)
    assert res.solutions == 1 and res.free_symbols == 0


@pytest.mark.parametrize("M, want", [(1, 1), (2, 3), (3, 1), (4, 3), (6, 3)])
def test_gl1_trefoil_q2(trefoil, M, want):
    assert count_torsors(trefoil, make_group("GL", 1, 2, M), 1).solutions == want


@pytest.mark.parametrize("M, want", [(1, 1), (2, 1), (3, 1), (6, 7)])
def test_gl1_trefoil_q3(trefoil, M, want):
    assert count_torsors(trefoil, make_group("GL", 1, 3, M), 1).solutions == want


def test_gl1_matches_locsys(knots):
    for name in ("trefoil", "figure-eight", "5_2", "torus(2,5)"):
        d = knots[name]
        best = max(count_torsors(d, make_group("GL", 1, 2, M), 1).solutions
                   for M in range(1, 11))
        assert best == stable_class_count(d, 2, 1).value, name


def test_semidirect_multiplication_is_associative():
    spec = make_group("GL", 2, 2, 2)
    rng = random.Random(3)
    group = list(spec.elements())
    for _ in range(30):
        x, y, z = ((rng.choice(group), rng.randint(-2, 2)) for _ in range(3))
        left = semidirect_mul(spec, semidirect_mul(spec, x, y), z)
        right = semidirect_mul(spec, x, semidirect_mul(spec, y, z))
        assert left == right
        a, i = x
        b, j = y
        assert semidirect_mul(spec, x, y) == (spec.mul(a, spec.frob(b, i)), i + j)


def test_gl2_orbits_partition_the_solutions(trefoil):
    spec = make_group("GL", 2, 2, 2)
    res = count_torsors(trefoil, spec, 1)
    assert res.fixed_group_order == 6
    assert sum(res.fixed_group_order // s for s in res.stabilizer_orders) == res.solutions
    for sol in res.solution_list:
        assert verify_solution(trefoil, spec, sol, 1)


def test_determinant_of_a_solution_is_a_gl1_solution(trefoil):
    spec = make_group("GL", 2, 2, 2)
    line = make_group("GL", 1, 2, 2)
    for sol in count_torsors(trefoil, spec, 1).solution_list:
        assert verify_solution(trefoil, line, determinant_image(spec, sol), 1)


def test_solutions_embed_into_the_doubled_level(trefoil):
    small, big = make_group("GL", 2, 2, 1), make_group("GL", 2, 2, 2)
    for sol in count_torsors(trefoil, small, 1).solution_list:
        assert verify_solution(trefoil, big, embed_solution(small, sol, big), 1)


def test_group_order_and_inverse():
    spec = make_group("GL", 2, 3, 1)
    elems = list(spec.elements())
    assert len(elems) == spec.order == 48
    for g in elems:
        assert spec.mul(g, spec.inv(g)) == spec.identity


def test_evaluate_word_with_shifts():
    spec = make_group("GL", 1, 2, 2)
    g = (2,)
    w = ((0, 1, 1), (0, 0, -1))  # sigma(g) g^-1 = g^(q-1)
    f = spec.field
    assert evaluate_word(spec, w, {0: g}, 1) == (f.pow(2, 1),)


def test_guards(trefoil):
    with pytest.raises(InvalidParameter):
        GroupSpec("Sp", 2, make_group("GL", 1, 2, 1).field)
    with pytest.raises(InvalidParameter):
        count_torsors(trefoil, make_group("GL", 1, 2, 3), 2)
    with pytest.raises(BudgetExceeded):
        count_torsors(trefoil, make_group("GL", 2, 2, 2), 1, budget=10)
