from fractions import Fraction

import pytest

from gconverge import realsets as rs
from gconverge.corpus import addable_pairs, standard_corpus, standard_shifts
from gconverge.errors import PreconditionError
from gconverge.groups import (
    NeighborhoodBase,
    cesaro_intersection_counterexample,
    check_AU_open,
    check_closure_bound,
    check_group_axioms,
    check_inverse_open,
    check_neighborhood_criterion,
    check_symmetric_closure,
    check_topology,
    check_translations,
    closure_via_base,
    default_u,
    hausdorff_excess,
    hypothesis_necessity_suite,
    almost_in_check,
    standing_assumption,
    symmetrize,
)
from gconverge.methods import CESARO, LIM, STAT, SYMBOLIC_METHODS
from gconverge.parsing import parse_set

S = parse_set
Q = Fraction


def test_standing_assumption():
    assert standing_assumption(LIM).holds
    assert not standing_assumption(CESARO).holds
    assert not standing_assumption(STAT).holds


@pytest.mark.parametrize("m", SYMBOLIC_METHODS, ids=lambda m: m.name)
def test_group_axioms(m):
    assert check_group_axioms(m, addable_pairs()).passed


@pytest.mark.parametrize("m", SYMBOLIC_METHODS, ids=lambda m: m.name)
def test_translations(m):
    assert check_translations(m, standard_corpus(), standard_shifts(20)).passed


def test_base_validation():
    NeighborhoodBase(64).validate(LIM)
    with pytest.raises(PreconditionError):
        NeighborhoodBase(2, lambda k: S("(0,1)")).validate(LIM)
    with pytest.raises(PreconditionError):
        NeighborhoodBase(2, lambda k: S("[-1,1]")).validate(LIM)


def test_symmetrize():
    assert symmetrize(S("(-1,2)")) == S("(-1,1)")
    with pytest.raises(PreconditionError):
        symmetrize(S("(1,2)"))


def test_inverse_open():
    assert check_inverse_open(LIM, S("(-1,2)")).passed
    assert not check_inverse_open(CESARO, S("(-1,2) u (3,4)")).passed


def test_cesaro_counterexample():
    t = cesaro_intersection_counterexample()
    assert not t.passed
    assert t.counterexample["intersection"] == "(-inf,1) u (2,5) u (6,inf)"
    assert t.counterexample["kernel"] == "(-inf,1) u (6,inf)"
    assert t.counterexample["missing"] == "(2,5)"


def test_lim_topology():
    assert check_topology(LIM, [S("(0,2)"), S("(1,3) u (5,6)"), default_u(2)]).passed


def test_au_open_and_closure_bound():
    a = S("[0,1] u {3}")
    for k in (1, 4, 64):
        assert check_AU_open(LIM, a, default_u(k)).passed
        assert check_closure_bound(LIM, a, default_u(k)).passed


def test_closure_via_base_gap():
    rep = closure_via_base(LIM, S("(0,1)"), NeighborhoodBase(8))
    assert rep.passed
    assert rep.meta["I_K"] == "(-1/8,9/8)" and rep.meta["gap_K"] == Q(1, 8)
    for k in (1, 3, 16, 64):
        rep = closure_via_base(LIM, S("[0,1] u {5/2}"), NeighborhoodBase(k))
        assert rep.passed and rep.meta["gap_K"] <= Q(1, k)


def test_hausdorff_excess():
    assert hausdorff_excess(S("(-1/4,5/4)"), S("[0,1]")) == Q(1, 4)
    assert hausdorff_excess(S("R"), S("[0,1]")) == rs.INF
    assert hausdorff_excess(S("empty"), S("[0,1]")) == 0


def test_symmetric_closure():
    assert check_symmetric_closure(LIM, S("(-2,-1) u (1,2)")).passed
    with pytest.raises(PreconditionError):
        check_symmetric_closure(LIM, S("(1,2)"))


def test_neighborhood_criterion():
    base = NeighborhoodBase(16)
    a = S("(0,1)")
    for x in (Q(0), Q(1, 2), Q(1), Q(3, 2), Q(1, 32)):
        assert check_neighborhood_criterion(LIM, a, x, base).passed


def test_almost_in_characterization():
    a = S("[0,1) u {3}")
    assert almost_in_check(LIM, a, [Q(0), Q(1, 2), Q(1), Q(3), Q(5)], standard_corpus()).passed


def test_hypothesis_necessity():
    assert hypothesis_necessity_suite(LIM).passed
    rep = hypothesis_necessity_suite(CESARO)
    assert rep.passed and rep.meta["in_hypothesis"] is False
