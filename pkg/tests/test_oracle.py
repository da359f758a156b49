from fractions import Fraction

import pytest

from gconverge import oracle
from gconverge import realsets as rs
from gconverge.methods import CESARO, LIM, STAT, SYMBOLIC_METHODS
from gconverge.oracle import check_hull, check_kernel, grid, partial_value, witness
from gconverge.parsing import parse_set

S = parse_set


def test_grid_covers_padded_integer_range():
    g = grid(S("[0,1/2] u (3,7/2)"))
    assert len(g) == oracle.GRID_PARTS + 1
    assert g[0] == -1 and g[-1] == 5 and g == sorted(g)


@pytest.mark.parametrize("m", SYMBOLIC_METHODS, ids=lambda m: m.name)
def test_witness_reaches_boundary(m):
    a = S("(0,1) u [2,3]")
    c = witness(m, a, Fraction(1))
    assert c is not None and c.valued_in(a)
    assert abs(partial_value(m, c) - 1.0) <= oracle.ACHIEVE_TOL


def test_cesaro_mix_fills_gap():
    a = S("{0} u {1}")
    c = witness(CESARO, a, Fraction(5, 16))
    assert c is not None and c.valued_in(a)
    assert abs(partial_value(CESARO, c) - 5 / 16) <= oracle.ACHIEVE_TOL
    assert witness(LIM, a, Fraction(5, 16)) is None


def test_off_grid_mix_limited_by_horizon():
    # a {0,1}-valued mean at N = 10^5 is k/10^5, at least 3.3e-6 away from 1/3
    c = witness(CESARO, S("{0} u {1}"), Fraction(1, 3))
    assert c is not None
    assert abs(partial_value(CESARO, c) - 1 / 3) <= 1e-5


def test_statistical_spike_stays_at_base():
    a = S("[0,1] u {5}")
    for c in oracle.catalog(STAT, a):
        if c.valued_in(a):
            assert not abs(partial_value(STAT, c) - 3.0) <= oracle.ESCAPE_TOL


@pytest.mark.parametrize("m", SYMBOLIC_METHODS, ids=lambda m: m.name)
def test_oracle_agrees(m):
    for a in oracle.random_sets(10, seed=5):
        assert check_hull(m, a).passed
        assert check_kernel(m, a).passed


def test_oracle_rejects_too_small_hull(monkeypatch):
    a = S("[0,1] u [2,3]")
    # claiming the ordinary closure for Cesaro misses the mixes in the gap
    monkeypatch.setattr(oracle, "hull", lambda m, x: rs.closure(x))
    r = check_hull(CESARO, a)
    assert not r.passed and {f["kind"] for f in r.failures} == {"escaped"}


def test_oracle_rejects_too_large_hull(monkeypatch):
    a = S("[0,1] u [2,3]")
    monkeypatch.setattr(oracle, "hull", lambda m, x: rs.convex_hull(x))
    r = check_hull(LIM, a)
    assert not r.passed and "no construction" in {f["kind"] for f in r.failures}


def test_result_json():
    r = check_hull(LIM, S("(0,1)"))
    j = r.to_json()
    assert j["method"] == "lim" and j["claimed_hull"] == "[0,1]" and j["failures"] == []
