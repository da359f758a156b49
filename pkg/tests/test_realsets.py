from fractions import Fraction

from hypothesis import given, settings

from gconverge import realsets as rs
from gconverge.rational import INF, NEG_INF
from gconverge.realsets import RSet

from conftest import rsets


def test_normalization_merges():
    a = rs.interval(0, 1, True, False) | rs.interval(1, 2)
    assert a == rs.interval(0, 2)
    assert str(RSet.point(3) | rs.interval(0, 1)) == "[0,1] u {3}"
    assert rs.interval(0, 1, False, False) | RSet.point(0, 1) == rs.interval(0, 1)


def test_complement_and_closure():
    a = rs.interval(0, 1, False, True) | RSet.point(3)
    assert str(rs.complement(a)) == "(-inf,0] u (1,3) u (3,inf)"
    assert rs.closure(a) == rs.interval(0, 1) | RSet.point(3)
    assert rs.interior(a) == rs.interval(0, 1, False, False)
    assert rs.convex_hull(a) == rs.interval(0, 3)


def test_minkowski_and_affine():
    a = rs.interval(0, 1) | RSet.point(5)
    u = rs.interval(-Fraction(1, 4), Fraction(1, 4), False, False)
    assert a + u == rs.interval(-Fraction(1, 4), Fraction(5, 4), False, False) | rs.interval(
        Fraction(19, 4), Fraction(21, 4), False, False)
    assert rs.affine_image(a, -2, 1) == rs.interval(-1, 1) | RSet.point(-9)
    assert rs.scale(a, 0) == RSet.point(0)


def test_unbounded():
    r = rs.interval(NEG_INF, 0, False, True)
    assert not r.is_bounded and rs.inf(r) == NEG_INF
    assert rs.complement(r) == rs.interval(0, INF, False, False)
    assert rs.complement(RSet.empty()).is_reals


def test_distance():
    a = rs.interval(0, 1) | rs.interval(3, 4, False, True)
    assert rs.distance(2, a) == 1
    assert rs.distance(Fraction(1, 2), a) == 0


@settings(max_examples=200)
@given(rsets(), rsets())
def test_de_morgan(a, b):
    assert ~(a | b) == ~a & ~b
    assert ~(a & b) == ~a | ~b
    assert ~~a == a


@settings(max_examples=200)
@given(rsets())
def test_closure_interior_duality(a):
    assert rs.closure(a) == ~rs.interior(~a)
    assert rs.is_closed(rs.closure(a)) and rs.is_open(rs.interior(a))
    assert rs.interior(a) <= a <= rs.closure(a)


@settings(max_examples=200)
@given(rsets())
def test_json_round_trip(a):
    assert RSet.from_json(a.to_json()) == a


@settings(max_examples=100)
@given(rsets(), rsets())
def test_sum_commutes(a, b):
    assert a + b == b + a
    assert rs.negate(a + b) == rs.negate(a) + rs.negate(b)


@settings(max_examples=100)
@given(rsets())
def test_sample_point_inside(a):
    if not a.is_empty:
        assert rs.sample_point(a) in a
