import random

import pytest
from hypothesis import given, settings

from gconverge import realsets as rs
from gconverge.parsing import ParseError, parse_box, parse_family, parse_point, parse_seq, parse_set
from gconverge.products import PIndex, PRecip, Translated
from gconverge.realsets import RSet

from conftest import rsets


def test_operators_and_precedence():
    assert parse_set("[0,2] n [1,3] u {7}") == rs.interval(1, 2) | RSet.point(7)
    assert parse_set("compl (0,1)") == rs.complement(rs.interval(0, 1, False, False))
    assert parse_set("R \\ {0}") == rs.complement(RSet.point(0))
    assert parse_set("2 + [0,1]") == rs.interval(2, 3)
    assert parse_set("-[1,2]") == rs.interval(-2, -1)
    assert parse_set("(-inf,0) u (1/2,inf)") == rs.complement(rs.interval(0, "1/2"))
    assert parse_set("0.25") == RSet.point("1/4")
    assert parse_set("empty").is_empty


def test_seed_round_trip_500():
    rng = random.Random(3)
    for _ in range(500):
        a = rs.random_rset(rng, point_prob=0.2)
        assert parse_set(str(a)) == a


@settings(max_examples=200)
@given(rsets())
def test_round_trip_property(a):
    assert parse_set(str(a)) == a


@pytest.mark.parametrize("text,where", [
    ("[0,", 3), ("[1,0]", 0), ("[0,inf]", 0), ("(0,1) v (2,3)", 6), ("{1,}", 3), ("[0,1] @", 6),
])
def test_errors_point_at_position(text, where):
    with pytest.raises(ParseError) as e:
        parse_set(text)
    assert e.value.pos == where
    assert "^" in str(e.value)


def test_sequences():
    assert str(parse_seq("per(prefix=[]; cycle=[0,1])")) == "per(prefix=[]; cycle=[0,1])"
    s = parse_seq("spike(base=0; spike=1; where=squares)")
    assert parse_seq(str(s)) == s
    t = parse_seq("tab(values=[1,2]; beyond=const(tail=3))")
    assert [t.term(n) for n in (1, 2, 3)] == [1, 2, 3]
    with pytest.raises(ParseError):
        parse_seq("per(prefix=[1])")


def test_boxes_families_points():
    b = parse_box("box[d=2]{(0,1); [2,3]; tail=R}")
    assert b.depth == 2 and b.tail.a.is_reals
    with pytest.raises(ParseError):
        parse_box("box[d=3]{(0,1); tail=R}")
    assert isinstance(parse_family("family shifted(r=1/4)"), Translated)
    assert isinstance(parse_point("i"), PIndex) and isinstance(parse_point("1/i"), PRecip)
    p = parse_point("[5,-1; then i]")
    assert [p.at(i) for i in (1, 2, 3)] == [5, -1, 3]
