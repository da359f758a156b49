from fractions import Fraction

import pytest

from gconverge.corpus import convergent_corpus
from gconverge.methods import (
    CESARO,
    LIM,
    STAT,
    BandRows,
    CesaroRows,
    Converges,
    Diverges,
    FixedRows,
    Matrix,
    Product,
    Unknown,
    check_matrix_regular,
    check_preserves_subsequences,
    check_regular_empirical,
    check_subsequential,
    check_translate_regular,
    parse_method,
)
from gconverge.sequences import AP, Squares, const, per, spike


def test_lim():
    assert LIM.limit(const(3, [1, 2])) == Converges(3)
    assert isinstance(LIM.limit(per([], [0, 1])), Diverges)
    assert not LIM.in_domain(spike(0, 1, Squares()))


def test_cesaro_means():
    assert CESARO.limit(per([], [0, 1])) == Converges(Fraction(1, 2))
    assert CESARO.limit(per([100], [0, 1, 2])) == Converges(1)
    assert CESARO.limit(spike(0, 1, Squares())) == Converges(0)
    assert CESARO.limit(spike(0, 1, AP(1, 4))) == Converges(Fraction(1, 4))


def test_statistical():
    assert STAT.limit(spike(0, 1, Squares())) == Converges(0)
    assert isinstance(STAT.limit(per([], [0, 1])), Diverges)
    assert isinstance(STAT.limit(spike(0, 1, AP(1, 4))), Diverges)


def test_matrix_cesaro_agrees():
    mat = Matrix(CesaroRows())
    for s in convergent_corpus(20):
        assert mat.limit(s) == CESARO.limit(s)


def test_parse_method():
    assert parse_method("lim") is LIM or parse_method("lim").name == "lim"
    assert parse_method("prod(cesaro)").factor.name == "cesaro"
    assert isinstance(parse_method("prod(stat)"), Product)
    with pytest.raises(ValueError):
        parse_method("borel")


def test_silverman_toeplitz():
    assert check_matrix_regular(CesaroRows()).holds
    v = check_matrix_regular(BandRows(((0, Fraction(2)),)))
    assert not v.holds and v.witness["failing"] == ["iii"]
    v = check_matrix_regular(FixedRows(((1, Fraction(1)),)))
    assert not v.holds and "ii" in v.witness["failing"]


@pytest.mark.parametrize("m", [LIM, CESARO, STAT], ids=lambda m: m.name)
def test_regular_on_corpus(m):
    v = check_regular_empirical(m, convergent_corpus(100))
    assert v.holds and v.checked == 100


def test_subsequence_witnesses():
    assert check_preserves_subsequences(LIM, [const(1), const(0, [3])], [AP(2, 2)]).holds
    v = check_preserves_subsequences(CESARO, [per([], [0, 1])], [AP(2, 2)])
    assert not v.holds
    assert v.witness["limit"]["value"] == "1/2" and v.witness["subsequence_limit"]["value"] == "1"
    v = check_preserves_subsequences(STAT, [spike(0, 1, Squares())], [Squares()])
    assert v.witness["limit"]["value"] == "0" and v.witness["subsequence_limit"]["value"] == "1"


def test_subsequential():
    assert check_subsequential(CESARO, per([], [0, 2])).holds is False
    assert check_subsequential(STAT, spike(0, 1, Squares())).holds
    with pytest.raises(ValueError):
        check_subsequential(LIM, per([], [0, 1]))


def test_translate_regular():
    corpus = [per([], [0, 1]), spike(0, 1, Squares()), const(2)]
    for m in (LIM, CESARO, STAT):
        assert check_translate_regular(m, corpus, [Fraction(1, 3), -5]).holds


def test_failing_verdict_needs_witness():
    from gconverge.methods import TraitVerdict

    with pytest.raises(ValueError):
        TraitVerdict("x", False)


def test_unknown_is_not_exact():
    assert Unknown(Fraction(1, 2), Fraction(0)) != Converges(Fraction(1, 2))
