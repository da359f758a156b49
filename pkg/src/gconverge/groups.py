"""Method-relative topological group structure of the additive reals.

Written additively throughout: the group operation is ``+``, inversion is
negation, ``xU`` is ``x + U``, ``AU`` is the Minkowski sum ``A + U`` and
``V^-1`` is ``-V``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import realsets as rs
from .errors import PreconditionError
from .methods import (
    Cesaro,
    Converges,
    MethodSpec,
    check_g_continuity,
    check_preserves_subsequences,
)
from .rational import Q, format_rat
from .realsets import RSet
from .reports import Report
from .sequences import UnsupportedSequence, add, affine, negate, transform, translate
from .topology import g_closure, is_g_closed, is_g_open, kernel


def default_u(k: int) -> RSet:
    return rs.interval(-Fraction(1, k), Fraction(1, k), False, False)


@dataclass(frozen=True)
class NeighborhoodBase:
    """``U_1, ..., U_K``, by default ``U_k = (-1/k, 1/k)``."""

    count: int = 8
    generator: Optional[Callable[[int], RSet]] = None

    def u(self, k: int) -> RSet:
        return (self.generator or default_u)(k)

    def sets(self) -> list:
        return [self.u(k) for k in range(1, self.count + 1)]

    @property
    def is_default(self) -> bool:
        return self.generator is None

    def validate(self, m: MethodSpec):
        prev = None
        for k, u in enumerate(self.sets(), 1):
            if 0 not in u:
                raise PreconditionError(f"U_{k} = {u} does not contain 0")
            if not is_g_open(m, u):
                raise PreconditionError(f"U_{k} = {u} is not G-open under {m.name}; kernel is {kernel(m, u)}")
            if prev is not None and not u <= prev:
                raise PreconditionError(f"U_{k} = {u} is not inside U_{k - 1} = {prev}")
            prev = u


def standing_assumption(m: MethodSpec):
    """Verdict on the preserves-subsequences trait over the standard corpus."""
    try:
        return _standing_cached(m)
    except TypeError:  # unhashable method, e.g. explicit matrix rows
        return _standing(m)


def _standing(m: MethodSpec):
    from .corpus import STANDARD_FAMILIES, standard_corpus

    return check_preserves_subsequences(m, standard_corpus(), STANDARD_FAMILIES)


_standing_cached = functools.lru_cache(maxsize=None)(_standing)


def _hypothesis(rep: Report, m: MethodSpec) -> bool:
    """Record the standing assumption; returns whether later checks are in hypothesis."""
    v = standing_assumption(m)
    rep.add("standing assumption: preserves subsequences", True, informational=not v.holds,
            verdict=v.to_json())
    rep.meta["in_hypothesis"] = v.holds
    return v.holds


# -- group axioms ---------------------------------------------------------

def check_group_axioms(m: MethodSpec, pairs: list) -> Report:
    rep = Report("group-axioms", meta={"method": m.name, "pairs": len(pairs)})
    mult, inv = [], []
    checked = skipped = 0
    for x, y in pairs:
        gx, gy = m.limit(x), m.limit(y)
        for s, g in ((x, gx), (y, gy)):
            if isinstance(g, Converges):
                got = m.limit(transform(s, negate()))
                if got != Converges(-g.value):
                    inv.append({"x": str(s), "G(x)": g, "G(-x)": got})
        if not (isinstance(gx, Converges) and isinstance(gy, Converges)):
            continue
        try:
            s = add(x, y)
        except UnsupportedSequence:
            skipped += 1
            continue
        checked += 1
        got = m.limit(s)
        if got != Converges(gx.value + gy.value):
            mult.append({"x": str(x), "y": str(y), "G(x)": gx, "G(y)": gy, "G(x+y)": got})
    rep.add("multiplication: G(x + y) = G(x) + G(y)", not mult, failures=mult, checked=checked,
            skipped=skipped)
    rep.add("inversion: G(-x) = -G(x)", not inv, failures=inv)
    return rep


# -- neighbourhoods -------------------------------------------------------

def symmetrize(u: RSet) -> RSet:
    if 0 not in u:
        raise PreconditionError(f"{u} is not a neighbourhood of 0")
    return u & -u


def _open_nbhd(rep: Report, m: MethodSpec, u: RSet, at=0) -> bool:
    ok = at in u and is_g_open(m, u)
    rep.add(f"precondition: {u} is a G-open neighbourhood of {format_rat(Q(at))}", ok,
            kernel=str(kernel(m, u)))
    return ok


def check_inverse_open(m: MethodSpec, u: RSet) -> Report:
    rep = Report("inverse-open", meta={"method": m.name, "U": str(u)})
    if not _open_nbhd(rep, m, u):
        rep.meta["violation"] = "standing assumption: U is not G-open"
        return rep
    neg = -u
    rep.add("-U is G-open", is_g_open(m, neg), neg=str(neg), kernel=str(kernel(m, neg)))
    v = neg & u
    rep.add("V = -U n U satisfies -V inside U", (-v) <= u and 0 in v and is_g_open(m, v), V=str(v))
    return rep


def check_translations(m: MethodSpec, corpus: list, shifts: list) -> Report:
    rep = Report("translations", meta={"method": m.name})
    right, left = [], []
    for s in corpus:
        g = m.limit(s)
        if not isinstance(g, Converges):
            continue
        for a in shifts:
            a = Q(a)
            got = m.limit(transform(s, translate(a)))
            if got != Converges(g.value + a):
                right.append({"x": str(s), "a": a, "G(x)": g, "G(x+a)": got})
            # the group is abelian, so the left translation is the same map
            got_left = m.limit(s.map(lambda v, a=a: a + v))
            if got_left != Converges(a + g.value):
                left.append({"x": str(s), "a": a, "G(x)": g, "G(a+x)": got_left})
    rep.add("right translation G(x + a) = G(x) + a", not right, failures=right)
    rep.add("left translation G(a + x) = a + G(x)", not left, failures=left)
    return rep


def check_translated_base(m: MethodSpec, u: RSet, x) -> Report:
    x = Q(x)
    rep = Report("translated-base", meta={"method": m.name, "U": str(u), "x": x})
    inh = _hypothesis(rep, m)
    if not _open_nbhd(rep, m, u):
        return rep
    xu = u + x
    rep.add("x + U is G-open and contains x", is_g_open(m, xu) and x in xu, informational=not inh,
            set=str(xu))
    return rep


@dataclass
class GTopologyReport:
    method: str
    opens: list
    passed: bool
    checked: int
    counterexample: Optional[dict] = None
    invalid: Optional[list] = None

    def to_json(self):
        return {"method": self.method, "opens": [str(u) for u in self.opens], "passed": self.passed,
                "intersections_checked": self.checked, "counterexample": self.counterexample,
                "not_open_inputs": self.invalid}


def check_topology(m: MethodSpec, opens: list) -> GTopologyReport:
    """Are pairwise and three-way intersections of G-open sets G-open?"""
    invalid = [str(u) for u in opens if not is_g_open(m, u)]
    if invalid:
        return GTopologyReport(m.name, list(opens), False, 0, invalid=invalid)
    checked = 0
    for r in (2, 3):
        for combo in itertools.combinations(range(len(opens)), r):
            inter = RSet.reals()
            for i in combo:
                inter = inter & opens[i]
            checked += 1
            if not is_g_open(m, inter):
                ker = kernel(m, inter)
                return GTopologyReport(m.name, list(opens), False, checked, {
                    "sets": [str(opens[i]) for i in combo], "intersection": str(inter),
                    "kernel": str(ker), "missing": str(inter & ~ker)})
    return GTopologyReport(m.name, list(opens), True, checked)


def cesaro_intersection_counterexample() -> GTopologyReport:
    u = rs.interval(rs.NEG_INF, 1, False, False) | rs.interval(2, rs.INF, False, False)
    v = rs.interval(rs.NEG_INF, 5, False, False) | rs.interval(6, rs.INF, False, False)
    return check_topology(Cesaro(), [u, v])


def check_AU_open(m: MethodSpec, a: RSet, u: RSet) -> Report:
    rep = Report("AU-open", meta={"method": m.name, "A": str(a), "U": str(u)})
    inh = _hypothesis(rep, m)
    ok = is_g_open(m, u)
    rep.add("precondition: U is G-open", ok, kernel=str(kernel(m, u)))
    if ok:
        s = a + u
        rep.add("A + U is G-open", is_g_open(m, s), informational=not inh, sum=str(s))
    return rep


def check_closure_bound(m: MethodSpec, a: RSet, u: RSet) -> Report:
    rep = Report("closure-bound", meta={"method": m.name, "A": str(a), "U": str(u)})
    if not _open_nbhd(rep, m, u):
        return rep
    c, s = g_closure(m, a), a + u
    rep.add("G-closure of A inside A + U", c <= s, closure=str(c), sum=str(s))
    return rep


def hausdorff_excess(i: RSet, c: RSet):
    """``sup{dist(p, c) : p in i}`` for ``c`` nonempty; candidates are endpoints and gap midpoints."""
    if i.is_empty:
        return Fraction(0)
    if c.is_empty:
        return rs.INF
    cand = set(rs.endpoints(i))
    civs = c.intervals
    for left, right in zip(civs, civs[1:]):
        cand.add((left.hi + right.lo) / 2)
    for iv in i.intervals:
        if iv.lo == rs.NEG_INF and rs.inf(c) != rs.NEG_INF:
            return rs.INF
        if iv.hi == rs.INF and rs.sup(c) != rs.INF:
            return rs.INF
    ci = rs.closure(i)
    return max((rs.distance(p, c) for p in cand if p in ci), default=Fraction(0))


def closure_via_base(m: MethodSpec, a: RSet, base: NeighborhoodBase) -> Report:
    base.validate(m)
    c = g_closure(m, a)
    rep = Report("closure-via-base", meta={"method": m.name, "A": str(a), "K": base.count,
                                           "closure": str(c)})
    inter = RSet.reals()
    bad_contain, bad_gap, gaps = [], [], []
    for k, u in enumerate(base.sets(), 1):
        inter = inter & (a + u)
        if not c <= inter:
            bad_contain.append({"k": k, "I_k": str(inter)})
        gap = hausdorff_excess(inter, c)
        gaps.append(gap)
        if base.is_default and gap > Fraction(1, k):
            bad_gap.append({"k": k, "gap": gap, "I_k": str(inter)})
    rep.meta["I_K"] = str(inter)
    rep.meta["gap_K"] = gaps[-1] if gaps else Fraction(0)
    rep.add("closure inside every truncated intersection", not bad_contain, failures=bad_contain)
    if base.is_default:
        rep.add("gap at most 1/k", not bad_gap, failures=bad_gap)
    rep.add("gap is nonincreasing", all(x >= y for x, y in zip(gaps, gaps[1:])), gaps=gaps)
    return rep


def check_symmetric_closure(m: MethodSpec, a: RSet) -> Report:
    if a != -a:
        raise PreconditionError(f"{a} is not symmetric")
    c = g_closure(m, a)
    rep = Report("symmetric-closure", meta={"method": m.name, "A": str(a)})
    rep.add("G-closure is symmetric", c == -c, closure=str(c))
    return rep


def check_neighborhood_criterion(m: MethodSpec, a: RSet, x, base: NeighborhoodBase) -> Report:
    base.validate(m)
    x = Q(x)
    c = g_closure(m, a)
    inside = x in c
    meets = [not (a & (u + x)).is_empty for u in base.sets()]
    rep = Report("neighbourhood-criterion", meta={"method": m.name, "A": str(a), "x": x,
                                                  "in_closure": inside})
    rep.add("closure point: every x + U_k meets A", not inside or all(meets), meets=meets)
    if not inside:
        first_miss = next((k for k, hit in enumerate(meets, 1) if not hit), None)
        d = rs.distance(x, c)
        # every x + U_k meeting A up to K forces dist(x, closure) < 1/K for the default base
        ok = first_miss is not None or (base.is_default and d < Fraction(1, base.count))
        rep.add("non-closure point: some x + U_k misses A", ok, first_miss=first_miss, distance=d)
    return rep


# -- hypothesis necessity ------------------------------------------------

@dataclass(frozen=True)
class ApproachSequence:
    """``a + side * delta / n`` (or constant ``a`` when ``side == 0``)."""

    a: Fraction
    side: int
    delta: Fraction = Fraction(1)

    def term(self, n: int) -> Fraction:
        return self.a + self.side * self.delta / n

    @property
    def limit(self) -> Fraction:
        return self.a

    def almost_in(self, s: RSet) -> bool:
        """All but finitely many terms in ``s``: decided by a one-sided neighbourhood of ``a``."""
        if self.side == 0:
            return self.a in s
        for iv in s.intervals:
            if self.side > 0 and iv.lo <= self.a < iv.hi:
                return True
            if self.side < 0 and iv.lo < self.a <= iv.hi:
                return True
        return False

    def __str__(self):
        if self.side == 0:
            return f"const(tail={format_rat(self.a)})"
        sign = "+" if self.side > 0 else "-"
        return f"{format_rat(self.a)} {sign} {format_rat(self.delta)}/n"


def almost_in_catalog(seq, s: RSet) -> bool:
    """All but finitely many terms lie in ``s``; catalog sequences take finitely many values."""
    from .sequences import normalize

    return all(v in s for v in normalize(seq).recurrent_values())


def almost_in_check(m: MethodSpec, a: RSet, points: list, corpus: list) -> Report:
    """``p`` in the kernel iff every sequence converging to ``p`` is almost in ``a``."""
    rep = Report("almost-in", meta={"method": m.name, "A": str(a)})
    bad = []
    for p in points:
        p = Q(p)
        seqs = [ApproachSequence(p, side) for side in (-1, 0, 1)]
        catalog = [s for s in corpus if m.limit(s) == Converges(p)]
        every = all(s.almost_in(a) for s in seqs) and all(almost_in_catalog(s, a) for s in catalog)
        if (p in kernel(m, a)) != every:
            bad.append({"point": p, "in_kernel": p in kernel(m, a), "all_almost_in": every})
    rep.add("kernel membership iff every convergent sequence is almost in A", not bad, failures=bad,
            points=len(points))
    return rep


def subgroup_checks(m: MethodSpec) -> Report:
    """The subgroups of the line that are finite interval unions: {0} and R."""
    rep = Report("subgroups", meta={"method": m.name,
                                    "note": "only {0} and R are representable subgroups"})
    for h in (RSet.point(0), RSet.reals()):
        o, c = is_g_open(m, h), is_g_closed(m, h)
        rep.add(f"open subgroup {h} is closed", (not o) or c, open=o, closed=c)
        contains_open = not h.is_empty and not kernel(m, h).is_empty
        rep.add(f"subgroup {h} containing a nonempty open set is open", (not contains_open) or o,
                contains_open=contains_open, open=o)
    return rep


def homomorphism_checks(m: MethodSpec, corpus: list, scales=(3, -2, Fraction(1, 2), 0)) -> Report:
    rep = Report("homomorphisms", meta={"method": m.name})
    for c in scales:
        v = check_g_continuity(m, affine(c, 0), corpus)
        rep.add(f"x -> {format_rat(Q(c))}x is G-continuous", v.holds, verdict=v.to_json())
    return rep


OUT_OF_HYPOTHESIS = ("almost-in characterization", "inverse of an open neighbourhood is open",
                     "translated base", "intersection of open sets is open", "open subgroups",
                     "homomorphisms", "closure formulas")


def hypothesis_necessity_suite(m: MethodSpec, corpus: list = None) -> Report:
    from .corpus import standard_corpus

    corpus = corpus if corpus is not None else standard_corpus()
    rep = Report("hypothesis-necessity", meta={"method": m.name})
    v = standing_assumption(m)
    if v.holds:
        rep.meta["in_hypothesis"] = True
        sets = [rs.interval(0, 1, False, False), rs.interval(0, 1),
                rs.interval(-1, 0, False, False) | rs.interval(0, 1, False, False),
                rs.interval(0, 1, True, False) | RSet.point(3)]
        for a in sets:
            pts = sorted(set(rs.endpoints(a)) | {Fraction(1, 2), Fraction(-5), Fraction(3)})
            rep.extend(almost_in_check(m, a, pts, corpus), "almost-in: ")
        rep.extend(subgroup_checks(m), "subgroups: ")
        rep.extend(homomorphism_checks(m, corpus), "homomorphisms: ")
        return rep
    rep.meta["in_hypothesis"] = False
    rep.meta["out_of_hypothesis"] = list(OUT_OF_HYPOTHESIS)
    rep.add("standing assumption fails with a counterexample", v.witness is not None,
            witness=v.witness)
    if isinstance(m, Cesaro):
        t = cesaro_intersection_counterexample()
        rep.add("open sets not closed under intersection", not t.passed and t.counterexample is not None,
                counterexample=t.counterexample)
    return rep
