from fractions import Fraction

import pytest

from gconverge import realsets as rs
from gconverge.errors import PreconditionError
from gconverge.methods import CESARO, LIM, STAT, Converges, Product
from gconverge.parsing import parse_set
from gconverge.products import (
    Constant,
    DepthBox,
    Example33Family,
    PConst,
    PExplicit,
    PIndex,
    PRecip,
    ShiftedInterval,
    Translated,
    box_closed,
    box_hull,
    box_kernel,
    example33_scenario,
    product_connectedness,
    product_limit,
    sigma_density_scenario,
)
from gconverge.realsets import RSet

S = parse_set
Q = Fraction


def test_shifted_interval_factors():
    fam = ShiftedInterval(Q(1, 4))
    assert fam.factor(3) == rs.interval(Q(11, 4), Q(13, 4), False, False)
    assert isinstance(fam, Translated)


def test_box_contains_tail():
    b = DepthBox.of_family(ShiftedInterval(Q(1, 4)), 4)
    assert b.contains(PIndex())
    assert not b.contains(PConst(0))
    assert not b.contains(PExplicit((1, 2, 3, 4, 5, 0), PIndex()))
    assert DepthBox((S("[0,1]"),), Constant(S("[0,1]"))).contains(PRecip())


def test_box_hull_componentwise():
    b = DepthBox((S("(0,1)"), S("{0} u {1}")), Constant(S("(2,3)")))
    h = box_hull(CESARO, b)
    assert h.factor(1) == S("[0,1]") and h.factor(2) == S("[0,1]") and h.factor(5) == S("[2,3]")
    assert box_closed(LIM, box_hull(LIM, b))
    assert not box_closed(STAT, b)


def test_empty_factor_gives_empty_box():
    b = DepthBox((S("[0,1]"), RSet.empty()))
    assert b.is_empty and box_closed(LIM, b)


def test_box_kernel_requires_preserving_method():
    b = DepthBox((S("[0,1]"),))
    assert box_kernel(LIM, b).factor(1) == S("(0,1)")
    with pytest.raises(PreconditionError):
        box_kernel(CESARO, b)


def test_box_str_round_trip():
    from gconverge.parsing import parse_box

    for text in ("box[d=2]{(0,1); [2,3]; tail=R}", "box[d=1]{{0}; tail=i + (-1/4,1/4)}"):
        b = parse_box(text)
        assert parse_box(str(b)) == b


def test_example33_values():
    fam = Example33Family()
    x3 = fam.point(3)
    assert [x3.at(i) for i in range(1, 5)] == [1, 2, 0, 4]
    lims = product_limit(Product(LIM), fam, 5)
    assert lims == [Converges(Q(i)) for i in range(1, 6)]


@pytest.mark.parametrize("depth", [2, 4, 8, 16])
def test_example33_scenario(depth):
    rep = example33_scenario(depth)
    assert rep.passed and len(rep.checks) == 5


def test_example33_depth_precondition():
    with pytest.raises(PreconditionError):
        example33_scenario(1)


def test_sigma():
    for a, x in ((PConst(0), PIndex()), (PIndex(), PRecip()), (PExplicit((5, -1), PConst(2)), PIndex())):
        assert sigma_density_scenario(8, a, x).passed


def test_product_connectedness():
    rep = product_connectedness(LIM, [S("[0,1]"), S("[0,1] u [2,3]")])
    assert rep.passed and not rep.meta["connected"]
    rep = product_connectedness(CESARO, [S("[0,1]"), S("(2,5]"), S("{7}")])
    assert rep.passed and rep.meta["connected"]
    with pytest.raises(PreconditionError):
        product_connectedness(LIM, [S("[0,1]")] * 4)
