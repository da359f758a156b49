"""Brute-force achievability oracle for the closed-form hulls.

The oracle never calls :func:`gconverge.topology.hull` to build anything. For
each grid point it constructs an explicit A-valued sequence, checks that the
sequence is A-valued exactly, and evaluates a partial version of the method
on its first ``N`` terms:

* ordinary limit: the ``N``-th term;
* Cesaro: the mean of the first ``N`` terms;
* statistical: the median of the first ``N`` terms (the statistical limit is
  the value the terms concentrate at off a density-zero set).

Points outside the claimed hull are attacked with a fixed catalog of
in-domain constructions, none of which may land near them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import realsets as rs
from .errors import UnsupportedMethod
from .methods import Cesaro, Lim, MethodSpec, Statistical
from .rational import INF, NEG_INF, format_rat, is_finite
from .realsets import Interval, RSet
from .sequences import EventuallyPeriodic, Squares, const, range_in
from .topology import hull

N_TERMS = 10**5
ACHIEVE_TOL = 1e-6
ESCAPE_TOL = 1e-3
GRID_PARTS = 16
_PERIODS = sorted(d for d in range(2, N_TERMS + 1) if N_TERMS % d == 0)


# -- constructions --------------------------------------------------------

class Construction:
    label: str = ""

    def terms(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def valued_in(self, a: RSet) -> bool:
        raise NotImplementedError


@dataclass
class Exact(Construction):
    """A catalog sequence; A-valuedness is decided by :func:`range_in`."""

    seq: object
    label: str = ""

    def terms(self, n):
        return self.seq.terms(n)

    def valued_in(self, a):
        return range_in(self.seq, a)

    def cesaro_mean(self, n) -> Optional[float]:
        s = self.seq
        if isinstance(s, EventuallyPeriodic) and not s.prefix:
            q, r = divmod(n, len(s.cycle))
            return float((q * sum(s.cycle) + sum(s.cycle[:r])) / n)
        return None


@dataclass
class Approach(Construction):
    """``p + side * delta / n**2``: tends to ``p`` from one side without reaching it."""

    p: Fraction
    delta: Fraction
    side: int
    label: str = ""

    def terms(self, n):
        k = np.arange(1, n + 1, dtype=float)
        return float(self.p) + self.side * float(self.delta) / (k * k)

    def valued_in(self, a):
        if self.side > 0:
            band = rs.interval(self.p, self.p + self.delta, False, True)
        else:
            band = rs.interval(self.p - self.delta, self.p, True, False)
        return band <= a


@dataclass
class Spiked(Construction):
    """``inner`` with the square-indexed terms overwritten by ``value``."""

    inner: Construction
    value: Fraction
    label: str = ""

    def terms(self, n):
        out = self.inner.terms(n).copy()
        out[Squares().mask(n)] = float(self.value)
        return out

    def valued_in(self, a):
        return self.value in a and self.inner.valued_in(a)


@dataclass
class Beatty(Construction):
    """``u`` with frequency ``t`` (an irrational-safe rounding pattern), ``v`` otherwise."""

    u: Fraction
    v: Fraction
    t: Fraction
    label: str = ""

    def terms(self, n):
        k = np.arange(0, n + 1)
        hits = np.diff(np.floor(k * float(self.t))) > 0
        return np.where(hits, float(self.u), float(self.v))

    def valued_in(self, a):
        return self.u in a and self.v in a


def partial_value(m: MethodSpec, c: Construction, n: int = N_TERMS) -> float:
    if isinstance(m, Lim):
        return float(c.terms(n)[-1])
    if isinstance(m, Cesaro):
        fast = c.cesaro_mean(n) if isinstance(c, Exact) else None
        return fast if fast is not None else math.fsum(c.terms(n)) / n
    if isinstance(m, Statistical):
        return float(np.median(c.terms(n)))
    raise UnsupportedMethod(f"oracle supports lim, cesaro and stat, not {m}")


# -- building a witness for a target point --------------------------------

def _delta(iv: Interval) -> Fraction:
    if iv.is_bounded:
        return min((iv.hi - iv.lo) / 2, Fraction(1, 256))
    return Fraction(1, 256)


def _approach(a: RSet, p: Fraction) -> Optional[Construction]:
    """Constant at ``p`` if ``p`` is in ``a``, else an approach from a component touching ``p``."""
    if p in a:
        return Exact(const(p), label=f"const {format_rat(p)}")
    for iv in a.intervals:
        if iv.lo == p:
            return Approach(p, _delta(iv), 1, label=f"approach {format_rat(p)} from above")
        if iv.hi == p:
            return Approach(p, _delta(iv), -1, label=f"approach {format_rat(p)} from below")
    return None


def _t_bound(p, u, v):
    """Weight on ``u`` that puts the mean at ``p``; limits at infinite ends."""
    if u == NEG_INF:
        return Fraction(0)
    if v == INF:
        return Fraction(1)
    return (v - p) / (v - u)


def _mix(a: RSet, p: Fraction) -> Optional[Construction]:
    """A periodic two-valued A-valued sequence with mean exactly ``p`` and period dividing N."""
    left = [iv for iv in a.intervals if iv.hi < p]
    right = [iv for iv in a.intervals if iv.lo > p]
    fallback = None
    for iu in reversed(left):
        for iv in right:
            t_lo, t_hi = _t_bound(p, iu.lo, iv.lo), _t_bound(p, iu.hi, iv.hi)
            ts = [t_lo] if t_lo == t_hi else []
            if t_lo < t_hi:
                for period in _PERIODS:
                    k = math.floor(t_lo * period) + 1
                    if Fraction(k, period) < t_hi:
                        ts = [Fraction(k, period)] + ([t_lo, t_hi] if t_lo > 0 and t_hi < 1 else [])
                        break
            for t in ts:
                if not 0 < t < 1:
                    continue
                u_set = RSet((iu,)) & rs.affine_image(RSet((iv,)), -(1 - t) / t, p / t)
                if u_set.is_empty:
                    continue
                u = rs.sample_point(u_set)
                v = (p - t * u) / (1 - t)
                if u not in a or v not in a or t * u + (1 - t) * v != p:
                    continue
                if N_TERMS % t.denominator == 0:
                    cycle = [u] * t.numerator + [v] * (t.denominator - t.numerator)
                    return Exact(EventuallyPeriodic((), tuple(cycle)),
                                 label=f"mix {format_rat(u)}:{format_rat(v)} at {format_rat(t)}")
                if fallback is None:
                    fallback = Beatty(u, v, t, label=f"beatty {format_rat(u)}:{format_rat(v)} at {format_rat(t)}")
    return fallback


def witness(m: MethodSpec, a: RSet, p: Fraction) -> Optional[Construction]:
    if isinstance(m, (Lim, Statistical)):
        c = _approach(a, p)
        if c is not None and isinstance(m, Statistical):
            far = rs.sample_point(a)
            c = Spiked(c, far, label=f"{c.label}, spikes {format_rat(far)} on squares")
        return c
    if isinstance(m, Cesaro):
        return _approach(a, p) or _mix(a, p)
    raise UnsupportedMethod(f"oracle supports lim, cesaro and stat, not {m}")


# -- catalog of constructions aimed at points outside the hull ------------

def _points(a: RSet) -> list:
    pts = []
    for iv in a.intervals:
        pts.append(rs.sample_point(RSet((iv,))))
        if iv.lo_closed:
            pts.append(iv.lo)
        if iv.hi_closed:
            pts.append(iv.hi)
        if iv.lo == NEG_INF:
            pts.append((iv.hi if is_finite(iv.hi) else 0) - 64)
        if iv.hi == INF:
            pts.append((iv.lo if is_finite(iv.lo) else 0) + 64)
    return sorted(set(pts))


def catalog(m: MethodSpec, a: RSet) -> list:
    pts = _points(a)
    out = [Exact(const(p), label=f"const {format_rat(p)}") for p in pts]
    for v in rs.endpoints(a):
        c = _approach(a, v) if v not in a else None
        if c is not None:
            out.append(c)
        for iv in a.intervals:
            if iv.lo == v and not iv.is_degenerate:
                out.append(Approach(v, _delta(iv), 1, label=f"approach {format_rat(v)} from above"))
            if iv.hi == v and not iv.is_degenerate:
                out.append(Approach(v, _delta(iv), -1, label=f"approach {format_rat(v)} from below"))
    if isinstance(m, Statistical):
        out += [Spiked(c, w, label=f"{c.label}, spikes {format_rat(w)}") for c in list(out) for w in pts[:3]]
    if isinstance(m, Cesaro):
        for i, u in enumerate(pts):
            for v in pts[i + 1:]:
                for k in range(1, GRID_PARTS):
                    cyc = (u,) * k + (v,) * (GRID_PARTS - k)
                    out.append(Exact(EventuallyPeriodic((), cyc), label=f"mix {format_rat(u)}:{format_rat(v)} {k}/16"))
    return out


# -- the check ------------------------------------------------------------

def grid(a: RSet) -> list:
    """17 points splitting an integer range, padded by one, around ``a`` into 16 parts."""
    ends = rs.endpoints(a)
    lo = (math.floor(ends[0]) if ends else 0) - 1
    hi = (math.ceil(ends[-1]) if ends else 0) + 1
    step = Fraction(hi - lo, GRID_PARTS)
    return [lo + k * step for k in range(GRID_PARTS + 1)]


@dataclass
class OracleResult:
    method: str
    set: str
    claimed: str
    inside: int = 0
    outside: int = 0
    failures: list = field(default_factory=list)
    max_error: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"method": self.method, "set": self.set, "claimed_hull": self.claimed,
                "inside_points": self.inside, "outside_points": self.outside,
                "max_error": self.max_error, "failures": self.failures}


def check_hull(m: MethodSpec, a: RSet, n: int = N_TERMS) -> OracleResult:
    claimed = hull(m, a)
    res = OracleResult(m.name, str(a), str(claimed))
    if a.is_empty:
        return res
    points = sorted(set(grid(a)) | set(rs.endpoints(claimed)))
    cat = None
    for p in points:
        if p in claimed:
            res.inside += 1
            c = witness(m, a, p)
            if c is None:
                res.failures.append({"point": format_rat(p), "kind": "no construction"})
                continue
            if not c.valued_in(a):
                res.failures.append({"point": format_rat(p), "kind": "construction leaves A", "construction": c.label})
                continue
            err = abs(partial_value(m, c, n) - float(p))
            res.max_error = max(res.max_error, err)
            if err > ACHIEVE_TOL:
                res.failures.append({"point": format_rat(p), "kind": "not achieved", "construction": c.label,
                                     "error": err})
        else:
            res.outside += 1
            if cat is None:
                cat = [(c, partial_value(m, c, n)) for c in catalog(m, a) if c.valued_in(a)]
            for c, val in cat:
                if abs(val - float(p)) <= ESCAPE_TOL:
                    res.failures.append({"point": format_rat(p), "kind": "escaped", "construction": c.label,
                                         "value": val})
                    break
    return res


def check_kernel(m: MethodSpec, a: RSet, n: int = N_TERMS) -> OracleResult:
    """Definitional kernel check: points of the kernel are exactly those no complement-valued sequence reaches."""
    return check_hull(m, rs.complement(a), n)


def random_sets(count: int, seed: int) -> list:
    rng = random.Random(seed)
    return [rs.random_rset(rng) for _ in range(count)]
