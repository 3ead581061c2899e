"""Canonical forms, 2-quotients of presentations, parent operators."""

import pytest

from artin44.fpgrp import (
    limit_presentation, metabelian_limit_presentation, parse_presentation,
)
from artin44.isom import (
    BudgetExceeded, PQEngine, completion_lcs_quotient, descendant_numbers,
    gamma_parent, is_isomorphic, lcs_quotient, p_quotient, parent,
    parent_chain, standard_form,
)
from artin44.pcgroup import abelian_44, elementary_root, quaternion8
from artin44.pgen import descendants, multiplicator_rank, root_aut_group

FREE2 = "fpgroup; gens x,y; end"


def fork32():
    g = elementary_root()
    kids = descendants(g, root_aut_group(g), steps=[3])
    assert len(kids) == 1
    return kids[0].group


def test_pq_free_class_one():
    q = p_quotient(parse_presentation(FREE2), 1)
    assert q.order == 4
    assert q.comm == {}


def test_pq_free_class_two_is_the_full_cover():
    q = p_quotient(parse_presentation(FREE2), 2)
    assert q.order == 32
    assert is_isomorphic(q, fork32())


def test_pq_quaternion():
    pres = parse_presentation(
        "fpgroup; gens x,y; rel x^2=y^2; rel [x,y]*x^2; end")
    eng = PQEngine(pres).extend(10)
    assert eng.completed
    assert eng.group.order == 8
    assert is_isomorphic(eng.group, quaternion8())


def test_pq_dihedral_differs_from_quaternion():
    pres = parse_presentation(
        "fpgroup; gens x,y; rel x^2; rel y^2; rel (x*y)^4; end")
    eng = PQEngine(pres).extend(10)
    assert eng.completed
    assert eng.group.order == 8
    assert not is_isomorphic(eng.group, quaternion8())


def test_pq_c4xc4():
    pres = parse_presentation(
        "fpgroup; gens x,y; rel x^4; rel y^4; rel [x,y]; end")
    q = p_quotient(pres, 6)
    assert q.order == 16
    assert is_isomorphic(q, abelian_44())


def test_pq_rejects_visible_relator():
    with pytest.raises(ValueError):
        PQEngine(parse_presentation("fpgroup; gens x,y; rel x; end"))


def test_pq_budget():
    with pytest.raises(BudgetExceeded):
        p_quotient(parse_presentation(FREE2), 6, max_gens=6)


def test_standard_form_identifies_presentations():
    # the same group reached along two different construction routes
    a = standard_form(fork32())
    b = standard_form(p_quotient(parse_presentation(FREE2), 2))
    assert a.key == b.key
    assert a.group.pow_rhs == b.group.pow_rhs
    assert a.group.comm == b.group.comm


def test_standard_form_images_are_an_isomorphism():
    h = quaternion8()
    sf = standard_form(h)
    assert sorted(h.element_order(m) for m in sf.images) == \
        sorted(h.element_order(1 << k) for k in range(h.ngens))
    assert sf.autgrp.order == 24


def test_parent_inverts_descent():
    g = abelian_44()
    sf = standard_form(g)
    for child in descendants(sf.group, sf.autgrp):
        par, step = parent(child.group)
        assert step == child.step
        assert is_isomorphic(par, g)


def test_gamma_parent_of_fork():
    par, step = gamma_parent(fork32())
    assert step == 1
    assert is_isomorphic(par, abelian_44())


def test_parent_chain_flavors():
    f = fork32()
    pchain = parent_chain(f, "p")
    assert [(g.order, s) for g, s in pchain] == [(32, 0), (4, 3)]
    gchain = parent_chain(f, "gamma")
    assert [(g.order, s) for g, s in gchain] == [(32, 0), (16, 1)]
    with pytest.raises(ValueError):
        parent_chain(f, "lower")


def test_lcs_quotient():
    q8 = quaternion8()
    assert lcs_quotient(q8, 2).order == 4
    assert lcs_quotient(q8, 5) is q8
    assert lcs_quotient(q8, 1).order == 1


def test_descendant_numbers_of_root():
    n, c = descendant_numbers(abelian_44())
    sf = standard_form(abelian_44())
    assert n == len(descendants(sf.group, sf.autgrp))
    assert 0 <= c <= n
    assert len(descendants(sf.group, sf.autgrp, steps=[1])) == 2


def test_metabelian_limit_abelianisation():
    q = completion_lcs_quotient(metabelian_limit_presentation(), 2)
    assert q.order == 16
    assert is_isomorphic(q, abelian_44())


def test_free_gamma_cut_is_infinite():
    with pytest.raises(BudgetExceeded):
        completion_lcs_quotient(parse_presentation(FREE2), 3, max_class=6)


@pytest.mark.slow
def test_limit_gamma6_cut():
    g000 = completion_lcs_quotient(limit_presentation(0, 0, 0), 6)
    assert g000.order_exp == 12
    assert len(g000.lower_central_series()) - 1 == 5
    std = standard_form(g000)
    assert multiplicator_rank(std.group) == 4
