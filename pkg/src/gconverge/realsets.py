"""Finite unions of intervals of the real line with exact rational endpoints.

An :class:`RSet` is always stored in normal form: sorted, pairwise disjoint,
non-adjacent intervals. Structural equality is therefore set equality.
Unbounded ends are ``-inf``/``inf`` floats and are always open.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .rational import INF, NEG_INF, Bound, Q, format_rat, is_finite


def _bound(x) -> Bound:
    if isinstance(x, float):
        if x in (INF, NEG_INF):
            return x
        raise TypeError(f"finite float endpoint {x!r}; use an exact rational")
    return Q(x)


@dataclass(frozen=True)
class Interval:
    """A nonempty interval. Degenerate (``lo == hi``) intervals are closed singletons."""

    lo: Bound
    hi: Bound
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = _bound(self.lo), _bound(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo == INF or hi == NEG_INF:
            raise ValueError("interval cannot start at +inf or end at -inf")
        if not is_finite(lo) and self.lo_closed:
            raise ValueError("an infinite endpoint must be open")
        if not is_finite(hi) and self.hi_closed:
            raise ValueError("an infinite endpoint must be open")
        if lo > hi:
            raise ValueError(f"lo > hi: {format_rat(lo)} > {format_rat(hi)}")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("empty interval; use RSet.empty()")

    @property
    def lo_key(self):
        return (self.lo, 0 if self.lo_closed else 1)

    @property
    def hi_key(self):
        return (self.hi, 0 if self.hi_closed else -1)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    def __contains__(self, p) -> bool:
        p = Q(p)
        if p < self.lo or p > self.hi:
            return False
        if p == self.lo and not self.lo_closed:
            return False
        if p == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self) -> str:
        if self.is_degenerate:
            return "{" + format_rat(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rat(self.lo)},{format_rat(self.hi)}{right}"


def _make(lo, hi, lo_closed, hi_closed) -> Optional[Interval]:
    """Build an interval, or None when the bounds describe the empty set."""
    if not is_finite(lo):
        lo_closed = False
    if not is_finite(hi):
        hi_closed = False
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return None
    return Interval(lo, hi, lo_closed, hi_closed)


def _normalize(intervals: Iterable[Interval]) -> tuple:
    items = sorted(intervals, key=lambda iv: (iv.lo_key, iv.hi_key))
    out: list[Interval] = []
    for iv in items:
        if out:
            cur = out[-1]
            touches = iv.lo < cur.hi or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed))
            if touches:
                hi = max(cur, iv, key=lambda x: x.hi_key)
                out[-1] = Interval(cur.lo, hi.hi, cur.lo_closed, hi.hi_closed)
                continue
        out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class RSet:
    intervals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    # -- constructors ---------------------------------------------------
    @classmethod
    def empty(cls) -> "RSet":
        return cls(())

    @classmethod
    def reals(cls) -> "RSet":
        return cls((Interval(NEG_INF, INF, False, False),))

    @classmethod
    def point(cls, *values) -> "RSet":
        return cls(tuple(Interval(Q(v), Q(v)) for v in values))

    @classmethod
    def closed(cls, lo, hi) -> "RSet":
        return interval(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> "RSet":
        return interval(lo, hi, False, False)

    # -- basic protocol -------------------------------------------------
    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __contains__(self, p) -> bool:
        return any(p in iv for iv in self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "empty"
        if self.is_reals:
            return "R"
        return " u ".join(str(iv) for iv in self.intervals)

    def __repr__(self) -> str:
        return f"RSet({str(self)!r})"

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_reals(self) -> bool:
        return self.intervals == (Interval(NEG_INF, INF, False, False),)

    @property
    def is_bounded(self) -> bool:
        return all(iv.is_bounded for iv in self.intervals)

    # -- operators ------------------------------------------------------
    def __or__(self, other: "RSet") -> "RSet":
        return union(self, other)

    def __and__(self, other: "RSet") -> "RSet":
        return intersect(self, other)

    def __invert__(self) -> "RSet":
        return complement(self)

    def __le__(self, other: "RSet") -> bool:
        return is_subset(self, other)

    def __ge__(self, other: "RSet") -> bool:
        return is_subset(other, self)

    def __add__(self, other) -> "RSet":
        if isinstance(other, RSet):
            return minkowski_sum(self, other)
        return translate(self, other)

    __radd__ = __add__

    def __neg__(self) -> "RSet":
        return negate(self)

    def to_json(self) -> list:
        return [
            {
                "lo": format_rat(iv.lo),
                "hi": format_rat(iv.hi),
                "lo_closed": iv.lo_closed,
                "hi_closed": iv.hi_closed,
            }
            for iv in self.intervals
        ]

    @classmethod
    def from_json(cls, data: list) -> "RSet":
        from .rational import parse_rat

        def b(s):
            return {"inf": INF, "-inf": NEG_INF}[s] if s in ("inf", "-inf") else parse_rat(s)

        return cls(tuple(Interval(b(d["lo"]), b(d["hi"]), d["lo_closed"], d["hi_closed"]) for d in data))


def interval(lo, hi, lo_closed: bool = True, hi_closed: bool = True) -> RSet:
    """A single interval as an RSet; an empty description gives the empty set."""
    iv = _make(_bound(lo), _bound(hi), lo_closed, hi_closed)
    return RSet(() if iv is None else (iv,))


# -- set algebra ----------------------------------------------------------

def union(a: RSet, b: RSet) -> RSet:
    return RSet(a.intervals + b.intervals)


def intersect(a: RSet, b: RSet) -> RSet:
    out = []
    for x in a.intervals:
        for y in b.intervals:
            lo = max(x, y, key=lambda iv: iv.lo_key)
            hi = min(x, y, key=lambda iv: iv.hi_key)
            iv = _make(lo.lo, hi.hi, lo.lo_closed, hi.hi_closed)
            if iv is not None:
                out.append(iv)
    return RSet(tuple(out))


def complement(a: RSet) -> RSet:
    out = []
    lo, lo_closed = NEG_INF, False
    for iv in a.intervals:
        gap = _make(lo, iv.lo, lo_closed, not iv.lo_closed)
        if gap is not None:
            out.append(gap)
        lo, lo_closed = iv.hi, not iv.hi_closed
    gap = _make(lo, INF, lo_closed, False)
    if gap is not None:
        out.append(gap)
    return RSet(tuple(out))


def difference(a: RSet, b: RSet) -> RSet:
    return intersect(a, complement(b))


def contains(a: RSet, p) -> bool:
    return p in a


def equals(a: RSet, b: RSet) -> bool:
    return a.intervals == b.intervals


def is_subset(a: RSet, b: RSet) -> bool:
    return difference(a, b).is_empty


def components(a: RSet) -> list:
    return [RSet((iv,)) for iv in a.intervals]


def inf(a: RSet) -> Optional[Bound]:
    """Infimum, or None for the empty set."""
    return a.intervals[0].lo if a.intervals else None


def sup(a: RSet) -> Optional[Bound]:
    """Supremum, or None for the empty set."""
    return a.intervals[-1].hi if a.intervals else None


# -- Minkowski ------------------------------------------------------------

def _iv_sum(x: Interval, y: Interval) -> Interval:
    lo = x.lo + y.lo
    hi = x.hi + y.hi
    lo_closed = x.lo_closed and y.lo_closed and is_finite(lo)
    hi_closed = x.hi_closed and y.hi_closed and is_finite(hi)
    return Interval(lo, hi, lo_closed, hi_closed)


def minkowski_sum(a: RSet, b: RSet) -> RSet:
    """``{x + y : x in a, y in b}``; a sum endpoint is closed iff both summand endpoints are."""
    return RSet(tuple(_iv_sum(x, y) for x in a.intervals for y in b.intervals))


def negate(a: RSet) -> RSet:
    return RSet(tuple(Interval(-iv.hi, -iv.lo, iv.hi_closed, iv.lo_closed) for iv in a.intervals))


def translate(a: RSet, g) -> RSet:
    g = Q(g)
    return RSet(tuple(Interval(iv.lo + g, iv.hi + g, iv.lo_closed, iv.hi_closed) for iv in a.intervals))


def scale(a: RSet, c) -> RSet:
    """Pointwise ``c * a`` for a nonzero rational ``c``."""
    c = Q(c)
    if c == 0:
        return RSet.point(0) if a else RSet.empty()
    if c < 0:
        return negate(scale(a, -c))
    return RSet(tuple(Interval(iv.lo * c, iv.hi * c, iv.lo_closed, iv.hi_closed) for iv in a.intervals))


def affine_image(a: RSet, slope, offset) -> RSet:
    return translate(scale(a, slope), offset)


# -- ordinary topology ----------------------------------------------------

def closure(a: RSet) -> RSet:
    return RSet(tuple(Interval(iv.lo, iv.hi, is_finite(iv.lo), is_finite(iv.hi)) for iv in a.intervals))


def interior(a: RSet) -> RSet:
    return RSet(tuple(Interval(iv.lo, iv.hi, False, False) for iv in a.intervals if not iv.is_degenerate))


def is_closed(a: RSet) -> bool:
    return closure(a) == a


def is_open(a: RSet) -> bool:
    return interior(a) == a


def is_connected_ordinary(a: RSet) -> bool:
    return len(a.intervals) <= 1


def convex_hull(a: RSet) -> RSet:
    """Smallest closed interval containing ``a``; infinite ends stay open."""
    if a.is_empty:
        return a
    return interval(inf(a), sup(a), True, True)


# -- helpers used by the oracle and the suites ----------------------------

def sample_point(a: RSet) -> Fraction:
    """A deterministic rational point of a nonempty set."""
    if a.is_empty:
        raise ValueError("empty set has no points")
    iv = a.intervals[0]
    if iv.is_degenerate:
        return iv.lo
    if is_finite(iv.lo) and is_finite(iv.hi):
        return (iv.lo + iv.hi) / 2
    if is_finite(iv.hi):
        return iv.hi - 1
    if is_finite(iv.lo):
        return iv.lo + 1
    return Fraction(0)


def distance(p, a: RSet):
    """Exact distance from a rational point to a nonempty set (inf for the empty set)."""
    p = Q(p)
    best = INF
    for iv in a.intervals:
        if p < iv.lo:
            d = iv.lo - p
        elif p > iv.hi:
            d = p - iv.hi
        else:
            d = Fraction(0)
        best = min(best, d)
    return best


def endpoints(a: RSet) -> list:
    """Finite endpoint values of ``a``, sorted and deduplicated."""
    vals = set()
    for iv in a.intervals:
        for v in (iv.lo, iv.hi):
            if is_finite(v):
                vals.add(v)
    return sorted(vals)


def random_rset(rng: random.Random, *, max_components: int = 5, max_den: int = 16,
                max_mag: int = 32, unbounded_prob: float = 0.1, point_prob: float = 0.0) -> RSet:
    """The fixed generator behind seeded suites.

    Draws 1..``max_components`` nondegenerate intervals with endpoints ``p/q``,
    ``q <= max_den``, ``|p/q| <= max_mag``, random open/closed flags, and
    occasionally an unbounded end. With ``point_prob > 0`` a draw may instead
    be a singleton. The result is normalized, so overlapping draws merge.
    """
    pieces = []
    for _ in range(rng.randint(1, max_components)):
        if point_prob and rng.random() < point_prob:
            v = random_rat(rng, max_den, max_mag)
            pieces.append(Interval(v, v))
            continue
        a, b = random_rat(rng, max_den, max_mag), random_rat(rng, max_den, max_mag)
        while a == b:
            b = random_rat(rng, max_den, max_mag)
        lo, hi = min(a, b), max(a, b)
        lo_c, hi_c = rng.random() < 0.5, rng.random() < 0.5
        if rng.random() < unbounded_prob:
            lo, lo_c = NEG_INF, False
        elif rng.random() < unbounded_prob:
            hi, hi_c = INF, False
        pieces.append(Interval(lo, hi, lo_c, hi_c))
    return RSet(tuple(pieces))


def random_rat(rng: random.Random, max_den: int, max_mag: int) -> Fraction:
    q = rng.randint(1, max_den)
    p = rng.randint(-max_mag * q, max_mag * q)
    return Fraction(p, q)
