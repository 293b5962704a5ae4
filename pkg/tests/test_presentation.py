from ffk.presentation import dehn_presentation, presentations_json, wirtinger_presentation


def test_dehn_generators_and_relations(knots):
    for d in knots.values():
        pres = dehn_presentation(d)
        assert pres.generator_count == d.v + 1
        assert len(pres.relations) == d.v


def test_dehn_twist_matches_index_jump(knots):
    for d in knots.values():
        pres = dehn_presentation(d)
        for r in pres.relations:
            assert pres.indices[r.j] - pres.indices[r.k] == r.twist
            assert pres.indices[r.m] - pres.indices[r.l] == r.twist


def test_wirtinger_counts(knots):
    for d in knots.values():
        w = wirtinger_presentation(d)
        assert w.generator_count == max(d.v, 1)
        assert len(w.relations) == d.v


def test_wirtinger_relators_have_zero_exponent_sum(knots):
    for d in knots.values():
        for r in wirtinger_presentation(d).relators():
            assert sum(s for _, s in r) == 0


def test_presentations_json(trefoil):
    out = presentations_json(trefoil)
    assert len(out["dehn"]["generators"]) == 4
    assert len(out["wirtinger"]["relations"]) == 3
    assert {r["handedness"] for r in out["dehn"]["relations"]} == {"right"}
