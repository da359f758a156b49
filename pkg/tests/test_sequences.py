from fractions import Fraction

import pytest

from gconverge.sequences import (
    AP,
    Finite,
    PowersOfTwo,
    Squares,
    Tabulated,
    UnsupportedSequence,
    add,
    const,
    evaluate,
    natural_density,
    normalize,
    per,
    spike,
    subsequence,
    transform,
    translate,
)


def test_families_nth_and_count():
    assert [Squares().nth(k) for k in range(1, 5)] == [1, 4, 9, 16]
    assert [PowersOfTwo().nth(k) for k in range(1, 5)] == [1, 2, 4, 8]
    assert AP(2, 2).nth(3) == 6
    assert Squares().count_upto(17) == 4
    assert AP(3, 3).count_upto(10) == 3


def test_densities_exact():
    assert natural_density(Squares()) == 0
    assert natural_density(PowersOfTwo()) == 0
    assert natural_density(AP(1, 3)) == Fraction(1, 3)
    assert natural_density(Finite(frozenset({1, 5}))) == 0


def test_masks_match_nth():
    for fam in (Squares(), PowersOfTwo(), AP(2, 5)):
        m = fam.mask(200)
        idx = [i for i in range(1, 201) if m[i - 1]]
        assert idx == [fam.nth(k) for k in range(1, len(idx) + 1)]


def test_terms_are_exact():
    s = per([7], [0, Fraction(1, 3)])
    assert [s.term(n) for n in range(1, 6)] == [7, 0, Fraction(1, 3), 0, Fraction(1, 3)]
    sp = spike(0, 1, Squares())
    assert [sp.term(n) for n in range(1, 10)] == [1, 0, 0, 1, 0, 0, 0, 0, 1]
    assert evaluate(const(5, [1, 2]), 10**12) == 5


def test_recurrent_values():
    assert per([9], [0, 1]).recurrent_values() == {0, 1}
    assert spike(0, 1, Squares()).recurrent_values() == {0, 1}
    assert spike(0, 1, Finite(frozenset({3}))).recurrent_values() == {0}
    assert Tabulated((4, 4), const(2)).recurrent_values() == {2}


def test_subsequence_of_periodic():
    s = per([], [0, 1])
    assert subsequence(s, AP(2, 2)).recurrent_values() == {1}
    assert subsequence(s, AP(1, 2)).recurrent_values() == {0}


def test_subsequence_along_spike_family():
    assert subsequence(spike(0, 1, Squares()), Squares()).recurrent_values() == {1}
    # squares avoid 2 mod 3
    assert subsequence(spike(0, 1, Squares()), AP(2, 3)).recurrent_values() == {0}
    # k^2 is 1 mod 3 unless 3 | k
    sub = subsequence(spike(0, 1, AP(1, 3)), Squares())
    assert [sub.term(k) for k in range(1, 7)] == [1, 1, 0, 1, 1, 0]


def test_unsupported_subsequence_raises():
    with pytest.raises(UnsupportedSequence):
        subsequence(spike(0, 1, PowersOfTwo()), AP(2, 3))


def test_add_and_translate():
    s = add(per([], [0, 1]), const(2))
    assert [s.term(n) for n in range(1, 5)] == [2, 3, 2, 3]
    t = transform(per([], [0, 1]), translate(Fraction(1, 2)))
    assert t.recurrent_values() == {Fraction(1, 2), Fraction(3, 2)}


def test_normalize_keeps_terms():
    s = Tabulated((1, 2, 3), per([], [5, 6]))
    n = normalize(s)
    assert [n.term(i) for i in range(1, 12)] == [s.term(i) for i in range(1, 12)]
