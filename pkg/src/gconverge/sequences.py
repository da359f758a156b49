"""Closed-form real sequences over exact rationals.

Four shapes are supported: eventually periodic (with eventually constant as
the cycle-length-1 case), spike mixes over an index family, and tabulated
prefixes in front of another shape. Every term is exactly computable and the
asymptotic value distribution (which values recur, and with what natural
density) is known in closed form, which is what makes generalized limits
decidable. Indexing is 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .rational import Q, format_rat


class UnsupportedSequence(ValueError):
    """The requested operation leaves the closed-form catalog."""


# -- index families -------------------------------------------------------

class IndexFamily:
    """A set of positive integers with exact natural density."""

    is_infinite = True

    def __contains__(self, n: int) -> bool:
        raise NotImplementedError

    def density(self) -> Fraction:
        raise NotImplementedError

    def nth(self, k: int) -> int:
        """The k-th smallest member (1-based)."""
        raise NotImplementedError

    def count_upto(self, n: int) -> int:
        raise NotImplementedError

    def mask(self, n: int) -> np.ndarray:
        """Boolean membership for indices 1..n."""
        idx = np.arange(1, n + 1)
        return np.fromiter((int(i) in self for i in idx), dtype=bool, count=n)


@dataclass(frozen=True)
class Squares(IndexFamily):
    def __contains__(self, n):
        r = math.isqrt(n)
        return n >= 1 and r * r == n

    def density(self):
        return Fraction(0)

    def nth(self, k):
        return k * k

    def count_upto(self, n):
        return math.isqrt(n) if n >= 1 else 0

    def mask(self, n):
        m = np.zeros(n, dtype=bool)
        r = np.arange(1, math.isqrt(n) + 1)
        m[r * r - 1] = True
        return m

    def __str__(self):
        return "squares"


@dataclass(frozen=True)
class PowersOfTwo(IndexFamily):
    """{1, 2, 4, 8, ...}"""

    def __contains__(self, n):
        return n >= 1 and n & (n - 1) == 0

    def density(self):
        return Fraction(0)

    def nth(self, k):
        return 1 << (k - 1)

    def count_upto(self, n):
        return n.bit_length() if n >= 1 else 0

    def mask(self, n):
        m = np.zeros(n, dtype=bool)
        p = 1
        while p <= n:
            m[p - 1] = True
            p <<= 1
        return m

    def __str__(self):
        return "pow2"


@dataclass(frozen=True)
class AP(IndexFamily):
    """{first, first + step, first + 2 step, ...}"""

    first: int
    step: int

    def __post_init__(self):
        if self.first < 1 or self.step < 1:
            raise ValueError("AP needs first >= 1 and step >= 1")

    def __contains__(self, n):
        return n >= self.first and (n - self.first) % self.step == 0

    def density(self):
        return Fraction(1, self.step)

    def nth(self, k):
        return self.first + (k - 1) * self.step

    def count_upto(self, n):
        return 0 if n < self.first else (n - self.first) // self.step + 1

    def mask(self, n):
        m = np.zeros(n, dtype=bool)
        m[self.first - 1 :: self.step] = True
        return m

    def __str__(self):
        return f"ap({self.first},{self.step})"


@dataclass(frozen=True)
class Finite(IndexFamily):
    members: frozenset = frozenset()

    is_infinite = False

    def __post_init__(self):
        members = frozenset(int(m) for m in self.members)
        if any(m < 1 for m in members):
            raise ValueError("indices are positive integers")
        object.__setattr__(self, "members", members)

    def __contains__(self, n):
        return n in self.members

    def density(self):
        return Fraction(0)

    def nth(self, k):
        return sorted(self.members)[k - 1]

    def count_upto(self, n):
        return sum(1 for m in self.members if m <= n)

    def mask(self, n):
        m = np.zeros(n, dtype=bool)
        for i in self.members:
            if i <= n:
                m[i - 1] = True
        return m

    def __str__(self):
        return "finite(" + ",".join(str(m) for m in sorted(self.members)) + ")"


def natural_density(family: IndexFamily) -> Fraction:
    return family.density()


# -- sequences ------------------------------------------------------------

def _rats(values) -> tuple:
    return tuple(Q(v) for v in values)


class SeqSpec:
    """Base class of the closed-form sequence shapes."""

    def term(self, n: int) -> Fraction:
        raise NotImplementedError

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("sequences are indexed from 1")
        return self.term(n)

    def values_from(self, start: int) -> frozenset:
        """Values taken at some index ``>= start``."""
        raise NotImplementedError

    def recurrent_values(self) -> frozenset:
        """Values taken at infinitely many indices."""
        raise NotImplementedError

    def value_densities(self) -> dict:
        """Natural density of the index set of each recurrent value (sums to 1)."""
        raise NotImplementedError

    def map(self, f: Callable[[Fraction], Fraction]) -> "SeqSpec":
        raise NotImplementedError

    def terms(self, n: int) -> np.ndarray:
        """First ``n`` terms as floats, for numeric evaluation paths."""
        raise NotImplementedError

    @property
    def horizon(self) -> int:
        """Number of leading terms outside the repeating structure."""
        return 0


@dataclass(frozen=True)
class EventuallyPeriodic(SeqSpec):
    prefix: tuple = ()
    cycle: tuple = (Fraction(0),)

    def __post_init__(self):
        object.__setattr__(self, "prefix", _rats(self.prefix))
        object.__setattr__(self, "cycle", _rats(self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    def term(self, n):
        p = len(self.prefix)
        if n <= p:
            return self.prefix[n - 1]
        return self.cycle[(n - p - 1) % len(self.cycle)]

    @property
    def horizon(self):
        return len(self.prefix)

    @property
    def is_eventually_constant(self) -> bool:
        return len(set(self.cycle)) == 1

    def values_from(self, start):
        return frozenset(self.prefix[start - 1 :]) | frozenset(self.cycle)

    def recurrent_values(self):
        return frozenset(self.cycle)

    def value_densities(self):
        out: dict = {}
        for v in self.cycle:
            out[v] = out.get(v, 0) + Fraction(1, len(self.cycle))
        return out

    def map(self, f):
        return EventuallyPeriodic(tuple(f(v) for v in self.prefix), tuple(f(v) for v in self.cycle))

    def terms(self, n):
        p = len(self.prefix)
        cyc = np.array([float(v) for v in self.cycle])
        idx = np.arange(n)
        out = cyc[(idx - p) % len(cyc)]
        head = min(p, n)
        out[:head] = [float(v) for v in self.prefix[:head]]
        return out

    def __str__(self):
        if len(self.cycle) == 1:
            if self.prefix:
                return f"const(prefix={_fmt_list(self.prefix)}; tail={format_rat(self.cycle[0])})"
            return f"const(tail={format_rat(self.cycle[0])})"
        return f"per(prefix={_fmt_list(self.prefix)}; cycle={_fmt_list(self.cycle)})"


def EventuallyConstant(prefix=(), tail=0) -> EventuallyPeriodic:
    """Eventually constant sequences are the cycle-length-1 periodic ones."""
    return EventuallyPeriodic(prefix, (tail,))


def const(tail, prefix=()) -> EventuallyPeriodic:
    return EventuallyPeriodic(prefix, (tail,))


def per(prefix, cycle) -> EventuallyPeriodic:
    return EventuallyPeriodic(prefix, cycle)


@dataclass(frozen=True)
class SpikeMix(SeqSpec):
    """``spike`` on the indices in ``where``, ``base`` elsewhere."""

    base: Fraction
    spike: Fraction
    where: IndexFamily

    def __post_init__(self):
        object.__setattr__(self, "base", Q(self.base))
        object.__setattr__(self, "spike", Q(self.spike))

    def term(self, n):
        return self.spike if n in self.where else self.base

    def _base_from(self, start) -> bool:
        """Whether ``base`` occurs at some index >= start."""
        w = self.where
        if isinstance(w, AP) and w.step == 1:
            return start < w.first
        return True  # complement of `where` is infinite

    def values_from(self, start):
        vals = set()
        if self._base_from(start):
            vals.add(self.base)
        w = self.where
        if w.is_infinite or any(m >= start for m in w.members):
            vals.add(self.spike)
        return frozenset(vals)

    def recurrent_values(self):
        vals = set()
        if self.where.is_infinite:
            vals.add(self.spike)
        if not (isinstance(self.where, AP) and self.where.step == 1):
            vals.add(self.base)
        return frozenset(vals)

    def value_densities(self):
        d = self.where.density()
        out: dict = {}
        for v, w in ((self.spike, d), (self.base, 1 - d)):
            if w:
                out[v] = out.get(v, 0) + w
        return out

    def map(self, f):
        return SpikeMix(f(self.base), f(self.spike), self.where)

    def terms(self, n):
        return np.where(self.where.mask(n), float(self.spike), float(self.base))

    def __str__(self):
        return f"spike(base={format_rat(self.base)}; spike={format_rat(self.spike)}; where={self.where})"


def spike(base, spike_value, where: IndexFamily) -> SpikeMix:
    return SpikeMix(base, spike_value, where)


@dataclass(frozen=True)
class Tabulated(SeqSpec):
    """Explicit leading ``values``; term n > len(values) is ``beyond(n)``."""

    values: tuple
    beyond: SeqSpec

    def __post_init__(self):
        object.__setattr__(self, "values", _rats(self.values))

    def term(self, n):
        if n <= len(self.values):
            return self.values[n - 1]
        return self.beyond.term(n)

    @property
    def horizon(self):
        return max(len(self.values), self.beyond.horizon)

    def values_from(self, start):
        head = frozenset(self.values[start - 1 :])
        return head | self.beyond.values_from(max(start, len(self.values) + 1))

    def recurrent_values(self):
        return self.beyond.recurrent_values()

    def value_densities(self):
        return self.beyond.value_densities()

    def map(self, f):
        return Tabulated(tuple(f(v) for v in self.values), self.beyond.map(f))

    def terms(self, n):
        out = self.beyond.terms(n)
        head = min(len(self.values), n)
        out[:head] = [float(v) for v in self.values[:head]]
        return out

    def __str__(self):
        return f"tab(values={_fmt_list(self.values)}; beyond={self.beyond})"


def _fmt_list(vals) -> str:
    return "[" + ",".join(format_rat(v) for v in vals) + "]"


def evaluate(seq: SeqSpec, n: int) -> Fraction:
    """The n-th term (1-based), exactly."""
    return seq(n)


# -- normalization --------------------------------------------------------

def _min_period(cycle: tuple) -> tuple:
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            return cycle[:p]
    return cycle


def _canonical_periodic(prefix: tuple, cycle: tuple) -> EventuallyPeriodic:
    cycle = _min_period(tuple(cycle))
    prefix = tuple(prefix)
    while prefix and prefix[-1] == cycle[-1]:
        cycle = (cycle[-1],) + cycle[:-1]
        prefix = prefix[:-1]
    return EventuallyPeriodic(prefix, cycle)


def _periodic_from(seq: SeqSpec, start: int, period: int, prefix_len: int) -> EventuallyPeriodic:
    prefix = tuple(seq(n) for n in range(start, start + prefix_len))
    cycle = tuple(seq(n) for n in range(start + prefix_len, start + prefix_len + period))
    return _canonical_periodic(prefix, cycle)


def normalize(seq: SeqSpec) -> SeqSpec:
    """Canonical form: structurally equal normal forms are extensionally equal.

    Spike mixes over arithmetic progressions or finite index sets become
    eventually periodic, and tabulated prefixes are absorbed or trimmed.
    """
    if isinstance(seq, EventuallyPeriodic):
        return _canonical_periodic(seq.prefix, seq.cycle)
    if isinstance(seq, SpikeMix):
        w = seq.where
        if seq.base == seq.spike:
            return const(seq.base)
        if isinstance(w, Finite):
            top = max(w.members, default=0)
            return _periodic_from(seq, 1, 1, top)
        if isinstance(w, AP):
            return _periodic_from(seq, 1, w.step, w.first - 1)
        return seq
    if isinstance(seq, Tabulated):
        beyond = normalize(seq.beyond)
        values = seq.values
        if isinstance(beyond, Tabulated):
            k = len(values)
            values = values + beyond.values[k:]
            beyond = beyond.beyond
        if isinstance(beyond, EventuallyPeriodic):
            start = max(len(values), len(beyond.prefix))
            combined = Tabulated(values, beyond)
            prefix = tuple(combined(n) for n in range(1, start + 1))
            cycle = tuple(beyond(n) for n in range(start + 1, start + 1 + len(beyond.cycle)))
            return _canonical_periodic(prefix, cycle)
        while values and values[-1] == beyond(len(values)):
            values = values[:-1]
        if not values:
            return beyond
        return Tabulated(values, beyond)
    raise TypeError(f"not a sequence: {seq!r}")


# -- transforms -----------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """x -> scale * x + shift. Translation and negation are special cases."""

    scale: Fraction = Fraction(1)
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "scale", Q(self.scale))
        object.__setattr__(self, "shift", Q(self.shift))

    def __call__(self, x):
        return self.scale * Q(x) + self.shift

    def image(self, s):
        """Image of an RSet."""
        from .realsets import affine_image

        return affine_image(s, self.scale, self.shift)

    def __str__(self):
        if self.scale == 1:
            return f"translate({format_rat(self.shift)})"
        if self.scale == -1 and self.shift == 0:
            return "negate"
        return f"affine({format_rat(self.scale)},{format_rat(self.shift)})"


def translate(g) -> AffineMap:
    return AffineMap(1, g)


def negate() -> AffineMap:
    return AffineMap(-1, 0)


def affine(a, b) -> AffineMap:
    return AffineMap(a, b)


def transform(seq: SeqSpec, f: AffineMap) -> SeqSpec:
    """Pointwise image ``n -> f(x_n)``, in the same shape."""
    return seq.map(f)


def add(x: SeqSpec, y: SeqSpec) -> SeqSpec:
    """Pointwise sum ``x_n + y_n`` when it stays in the catalog."""
    x, y = normalize(x), normalize(y)
    if isinstance(x, Tabulated) or isinstance(y, Tabulated):
        k = max(x.horizon, y.horizon)
        head = tuple(x(n) + y(n) for n in range(1, k + 1))
        xb = x.beyond if isinstance(x, Tabulated) else x
        yb = y.beyond if isinstance(y, Tabulated) else y
        return normalize(Tabulated(head, add(xb, yb)))
    if isinstance(x, EventuallyPeriodic) and isinstance(y, EventuallyPeriodic):
        start = max(len(x.prefix), len(y.prefix))
        period = math.lcm(len(x.cycle), len(y.cycle))
        prefix = tuple(x(n) + y(n) for n in range(1, start + 1))
        cycle = tuple(x(n) + y(n) for n in range(start + 1, start + 1 + period))
        return _canonical_periodic(prefix, cycle)
    if isinstance(y, SpikeMix) and isinstance(x, EventuallyPeriodic):
        x, y = y, x
    if isinstance(x, SpikeMix) and isinstance(y, EventuallyPeriodic):
        if not y.is_eventually_constant:
            raise UnsupportedSequence(f"{x} + {y} has no closed form in the catalog")
        c = y.cycle[0]
        head = tuple(x(n) + y(n) for n in range(1, len(y.prefix) + 1))
        return normalize(Tabulated(head, SpikeMix(x.base + c, x.spike + c, x.where)))
    if isinstance(x, SpikeMix) and isinstance(y, SpikeMix) and x.where == y.where:
        return SpikeMix(x.base + y.base, x.spike + y.spike, x.where)
    raise UnsupportedSequence(f"{x} + {y} has no closed form in the catalog")


# -- membership and subsequences ------------------------------------------

def range_in(seq: SeqSpec, a) -> bool:
    """True iff every term of ``seq`` lies in the RSet ``a``."""
    return all(v in a for v in seq.values_from(1))


def _square_residue_hits(first: int, step: int) -> bool:
    return any((m * m - first) % step == 0 for m in range(step))


def _powers_in_ap(first: int, step: int) -> Optional[list]:
    """Exponents j with 2**j in AP(first, step), or None if there are infinitely many."""
    seen: dict = {}
    r, j = 1 % step, 0
    while r not in seen:
        seen[r] = j
        r, j = (2 * r) % step, j + 1
    pre = seen[r]  # residues repeat from exponent `pre` on
    period = j - pre
    target = first % step
    hits = []
    for e in range(pre + period):
        if pow(2, e, step) == target:
            if e >= pre:
                return None
            if 2**e >= first:
                hits.append(e)
    return hits


def subsequence(seq: SeqSpec, along: IndexFamily) -> SeqSpec:
    """The subsequence ``k -> x_{n_k}`` with ``n_k`` the k-th member of ``along``.

    The result is normalized. Raises ValueError for finite index families and
    UnsupportedSequence when the extraction has no closed form in the catalog.
    """
    if not along.is_infinite:
        raise ValueError("a finite index family does not define a subsequence")
    s = normalize(seq)
    if along == AP(1, 1):
        return s
    if isinstance(s, Tabulated):
        head = []
        k = 1
        while along.nth(k) <= len(s.values):
            head.append(s.values[along.nth(k) - 1])
            k += 1
        return normalize(Tabulated(tuple(head), subsequence(s.beyond, along)))
    if isinstance(s, EventuallyPeriodic):
        return _periodic_subsequence(s, along)
    if isinstance(s, SpikeMix):
        return _spike_subsequence(s, along)
    raise TypeError(f"not a sequence: {seq!r}")


def _periodic_subsequence(s: EventuallyPeriodic, along: IndexFamily) -> SeqSpec:
    p, L = len(s.prefix), len(s.cycle)
    k0 = 1
    while along.nth(k0) <= p:
        k0 += 1
    if isinstance(along, (AP, Squares)):
        # n_{k+L} = n_k (mod L) for both families
        head = tuple(s(along.nth(k)) for k in range(1, k0))
        cycle = tuple(s(along.nth(k)) for k in range(k0, k0 + L))
        return _canonical_periodic(head, cycle)
    if isinstance(along, PowersOfTwo):
        seen: dict = {}
        k = k0
        while True:
            r = along.nth(k) % L
            if r in seen:
                break
            seen[r] = k
            k += 1
        k1 = seen[r]
        head = tuple(s(along.nth(j)) for j in range(1, k1))
        cycle = tuple(s(along.nth(j)) for j in range(k1, k))
        return _canonical_periodic(head, cycle)
    raise UnsupportedSequence(f"subsequence along {along}")


def _spike_subsequence(s: SpikeMix, along: IndexFamily) -> SeqSpec:
    b, sp, w = s.base, s.spike, s.where
    if along == w:
        return const(sp)
    if isinstance(w, Squares) and isinstance(along, PowersOfTwo):
        # 2**(k-1) is a square iff k is odd
        return _canonical_periodic((), (sp, b))
    if isinstance(w, PowersOfTwo) and isinstance(along, Squares):
        # k**2 is a power of two iff k is
        return SpikeMix(b, sp, PowersOfTwo())
    if isinstance(along, AP):
        a, d = along.first, along.step
        if isinstance(w, Squares):
            if not _square_residue_hits(a, d):
                return const(b)
        elif isinstance(w, PowersOfTwo):
            if a == d and a & (a - 1) == 0:
                # n_k = 2**t * k is a power of two iff k is
                return SpikeMix(b, sp, PowersOfTwo())
            hits = _powers_in_ap(a, d)
            if hits is not None:
                ks = frozenset((2**e - a) // d + 1 for e in hits)
                return normalize(SpikeMix(b, sp, Finite(ks)))
    raise UnsupportedSequence(f"subsequence of {s} along {along} leaves the catalog")
