import random

import pytest
from hypothesis import given, settings

from gconverge import realsets as rs
from gconverge.errors import GuardError, PreconditionError, UnsupportedMethod
from gconverge.methods import CESARO, LIM, STAT, SYMBOLIC_METHODS, Matrix, CesaroRows
from gconverge.parsing import parse_set
from gconverge.realsets import RSet
from gconverge import topology as t
from gconverge.topology import (
    g_closure,
    g_closure_trace,
    g_interior,
    hull,
    is_g_closed,
    is_g_connected,
    is_g_dense,
    is_g_open,
    is_relatively_g_closed,
    kernel,
)

from conftest import rsets

S = parse_set


def test_hull_examples():
    a = S("(0,1) u {3}")
    assert hull(LIM, a) == S("[0,1] u {3}")
    assert hull(STAT, a) == S("[0,1] u {3}")
    assert hull(CESARO, a) == S("[0,3]")
    assert hull(CESARO, S("(1,inf)")) == S("[1,inf)")
    assert hull(CESARO, S("{0} u {1}")) == S("[0,1]")


def test_kernel_examples():
    assert kernel(LIM, S("[0,1]")) == S("(0,1)")
    # the complement [1,2] is convex, so this set is Cesaro-open
    assert kernel(CESARO, S("(-inf,1) u (2,inf)")) == S("(-inf,1) u (2,inf)")
    assert kernel(CESARO, S("(-inf,1) u (2,5) u (6,inf)")) == S("(-inf,1) u (6,inf)")
    assert kernel(CESARO, S("(-inf,1)")) == S("(-inf,1)")


def test_open_closed_dense():
    assert is_g_closed(CESARO, S("[0,1]")) and not is_g_closed(CESARO, S("[0,1] u [2,3]"))
    assert is_g_open(LIM, S("(0,1) u (2,3)")) and not is_g_open(CESARO, S("(0,1) u (2,3)"))
    assert is_g_dense(LIM, S("R \\ {0}"))
    assert is_g_dense(CESARO, S("{0} u {1}")) is False


def test_closure_iterations():
    assert g_closure_trace(CESARO, S("{0} u {1}")) == (S("[0,1]"), 1)
    assert g_closure_trace(LIM, S("[0,1]"))[1] == 0


def test_guard(monkeypatch):
    # a hull that keeps growing trips the guard
    monkeypatch.setattr(t, "hull", lambda m, a: a + S("[0,1]"))
    with pytest.raises(GuardError):
        g_closure(LIM, S("{0}"))


def test_matrix_hull_unsupported():
    with pytest.raises(UnsupportedMethod):
        hull(Matrix(CesaroRows()), S("[0,1]"))


def test_relative_closedness():
    a = S("[0,1] u [2,3]")
    assert is_relatively_g_closed(LIM, S("[0,1]"), a)
    assert is_relatively_g_closed(CESARO, S("[0,1]"), a)
    assert not is_relatively_g_closed(CESARO, S("{0} u {3}"), a)
    with pytest.raises(PreconditionError):
        is_relatively_g_closed(LIM, S("[5,6]"), a)


def test_connectedness_table():
    r = is_g_connected(LIM, S("[0,1] u [2,3]"))
    assert not r.connected and r.separation == (S("[0,1]"), S("[2,3]"))
    assert is_g_connected(LIM, S("[0,1]")).connected
    assert is_g_connected(CESARO, S("[0,1]")).connected
    assert not is_g_connected(CESARO, S("{0} u {1}")).connected
    r = is_g_connected(CESARO, S("[0,1] u (2,3]"))
    assert r.separation == (S("[0,1]"), S("(2,3]"))
    with pytest.raises(PreconditionError):
        is_g_connected(LIM, RSet.empty())


def test_lim_connectedness_matches_ordinary():
    rng = random.Random(99)
    for _ in range(500):
        a = rs.random_rset(rng, point_prob=0.2)
        assert is_g_connected(LIM, a).connected == rs.is_connected_ordinary(a)


@pytest.mark.parametrize("m", SYMBOLIC_METHODS, ids=lambda m: m.name)
@settings(max_examples=60, deadline=None)
@given(a=rsets(), b=rsets())
def test_operator_laws(m, a, b):
    h = hull(m, a)
    assert a <= h and hull(m, h) == h
    assert kernel(m, a) == ~hull(m, ~a)
    assert kernel(m, a) <= a
    if a <= b:
        assert h <= hull(m, b)
    assert hull(m, a) | hull(m, b) <= hull(m, a | b)
    c = g_closure(m, a)
    assert is_g_closed(m, c)
    i = g_interior(m, a)
    assert i <= a and is_g_open(m, i)
    assert g_interior(m, a) == ~g_closure(m, ~a)


def test_union_law():
    law = t.union_law(CESARO, [S("[0,1]"), S("[1,2] u [3,4]")])
    assert law.applicable is False or law.holds
    law = t.union_law(LIM, [S("[0,1]"), S("[1,2]")])
    assert law.applicable and law.holds


@pytest.mark.parametrize("m", SYMBOLIC_METHODS, ids=lambda m: m.name)
def test_hull_idempotent_500(m):
    rng = random.Random(500)
    for _ in range(500):
        a = rs.random_rset(rng, point_prob=0.2)
        h = hull(m, a)
        assert hull(m, h) == h
