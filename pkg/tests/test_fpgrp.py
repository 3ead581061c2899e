"""Parsing and evaluation of the relator language."""

import pytest

from artin44.fpgrp import (
    FpSyntaxError, evaluate, format_word, limit_presentation,
    metabelian_limit_presentation, parse_presentation,
)
from artin44.pcgroup import PcGroup, abelian_44, quaternion8


def test_parse_shape():
    p = parse_presentation("fpgroup; gens x,y; rel x^4; rel [x,y]=y^2; end")
    assert p.gens == ("x", "y")
    assert len(p.relators) == 2
    # lhs = rhs turns into lhs * rhs^-1
    assert p.relators[1][0] == "prod"
    assert p.relators[1][1][1] == ("pow", ("pow", ("gen", "y"), 2), -1)


def test_round_trip():
    texts = [
        "fpgroup; gens x,y; rel x^4=[s2,y,y]; rel [x^2,y]; end",
        "fpgroup; gens a,b,c; rel [a,b,c]^-2*(a*b)^3; end",
        "fpgroup; gens x,y; end",
    ]
    for t in texts:
        p = parse_presentation(t)
        q = parse_presentation(p.text())
        assert q.relators == p.relators
        assert q.gens == p.gens


def test_macro_expansion():
    p = parse_presentation("fpgroup; gens x,y; rel w; end")
    y, x = ("gen", "y"), ("gen", "x")
    s2 = ("comm", (y, x))
    t3 = ("comm", (s2, y))
    assert p.relators[0] == ("comm", (t3, s2))


def test_macros_need_matching_generators():
    with pytest.raises(FpSyntaxError):
        parse_presentation("fpgroup; gens a,b; rel s2; end")


def test_rejects_garbage():
    for bad in [
        "fpgroup; gens x,y; rel x^4",          # missing end
        "fpgroup; gens x,y; rel z; end",        # unknown name
        "fpgroup; gens x,x; rel x; end",        # repeated generator
        "fpgroup; gens w; rel w; end",          # shadows an abbreviation
        "fpgroup; gens x,y; rel [x]; end",      # one-entry commutator
        "fpgroup; gens x,y; rel x!; end",       # stray symbol
    ]:
        with pytest.raises(FpSyntaxError):
            parse_presentation(bad)


def test_evaluate_against_pc_arithmetic():
    g = quaternion8()
    i, j = 1, 2
    imgs = {"x": i, "y": j}
    p = parse_presentation(
        "fpgroup; gens x,y;"
        " rel x^2*(y^2)^-1;"
        " rel x^4;"
        " rel y^-1*x*y*x;"
        " end")
    vals = [evaluate(r, imgs, g) for r in p.relators]
    assert vals == [0, 0, 0]


def test_left_normed_brackets():
    g = quaternion8()
    imgs = {"x": 1, "y": 2}
    w1 = parse_presentation("fpgroup; gens x,y; rel [x,y,y]; end").relators[0]
    direct = g.commutator(g.commutator(1, 2), 2)
    assert evaluate(w1, imgs, g) == direct


def test_negative_powers():
    g = abelian_44()
    imgs = {"x": 1, "y": 2}
    p = parse_presentation("fpgroup; gens x,y; rel x^-3*x^3; rel x^-1*x; end")
    assert [evaluate(r, imgs, g) for r in p.relators] == [0, 0]
    w = parse_presentation("fpgroup; gens x,y; rel x^-1; end").relators[0]
    assert evaluate(w, imgs, g) == g.inv(1)


def test_stock_presentations():
    m = metabelian_limit_presentation()
    assert len(m.relators) == 4
    combos = {(e, f, g) for e in (0, 1) for f in (0, 1) for g in (0, 1)}
    texts = {limit_presentation(e, f, g).text() for (e, f, g) in combos}
    assert len(texts) == 8
    with pytest.raises(ValueError):
        limit_presentation(2, 0, 0)


def test_format_word_braces_products():
    p = parse_presentation("fpgroup; gens x,y; rel (x*y)^2; end")
    assert format_word(p.relators[0]) == "(x*y)^2"
