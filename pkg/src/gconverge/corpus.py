"""The standard, versioned sequence corpus that trait flags are checked against.

Changing anything here changes what "corpus-checked" means; bump
``CORPUS_VERSION`` when you do.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .sequences import (
    AP,
    Finite,
    PowersOfTwo,
    Squares,
    Tabulated,
    const,
    per,
    spike,
)

CORPUS_VERSION = 1
_SEED = 20180301


def _rat(rng: random.Random, mag: int = 8, den: int = 16) -> Fraction:
    q = rng.randint(1, den)
    return Fraction(rng.randint(-mag * q, mag * q), q)


def convergent_corpus(size: int = 100, seed: int = _SEED) -> list:
    """Eventually constant sequences with random prefixes and tails."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        prefix = tuple(_rat(rng) for _ in range(rng.randint(0, 6)))
        out.append(const(_rat(rng), prefix))
    return out


def structured_corpus() -> list:
    """Hand-picked shapes; the first two are the textbook counterexamples."""
    return [
        per([], [0, 1]),
        spike(0, 1, Squares()),
        per([2], [1, 3]),
        per([], [1, 2, 3]),
        per([5, -1], [Fraction(1, 2), Fraction(1, 2), 4]),
        spike(0, 6, AP(3, 3)),
        spike(1, -1, PowersOfTwo()),
        spike(2, 2, Squares()),
        spike(0, 1, Finite(frozenset({1, 2, 3}))),
        spike(5, 7, AP(4, 1)),
        spike(Fraction(-3, 2), 4, AP(2, 2)),
        Tabulated((9, 9), spike(0, 1, Squares())),
        Tabulated((1, 2), per([], [0, 1])),
        Tabulated((Fraction(7, 3),), spike(3, -2, PowersOfTwo())),
        const(4, (9, 9)),
        const(0),
    ]


def standard_corpus() -> list:
    return structured_corpus() + convergent_corpus(40, seed=_SEED + 1)


STANDARD_FAMILIES = (AP(2, 2), Squares(), PowersOfTwo(), AP(1, 1), AP(3, 3), AP(2, 4), AP(5, 2))


def standard_shifts(count: int = 20, seed: int = _SEED + 2) -> list:
    rng = random.Random(seed)
    fixed = [Fraction(0), Fraction(3), Fraction(-1), Fraction(1, 2)]
    return (fixed + [_rat(rng, 32) for _ in range(count)])[:count]


def addable_pairs() -> list:
    """Pairs whose pointwise sum stays in the catalog (group-axiom checks)."""
    c = convergent_corpus(10, seed=_SEED + 3)
    pairs = [
        (per([], [0, 1]), const(2)),
        (per([], [0, 1]), per([1], [1, 2, 3])),
        (spike(0, 1, Squares()), const(0)),
        (spike(0, 1, Squares()), spike(2, -5, Squares())),
        (spike(1, -1, PowersOfTwo()), const(3, (1, 2))),
        (Tabulated((9, 9), spike(0, 1, Squares())), const(-1)),
        (spike(0, 6, AP(3, 3)), per([], [1, 2])),
    ]
    pairs += list(zip(c[::2], c[1::2]))
    return pairs
