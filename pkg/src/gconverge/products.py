"""Countable products of the line at finite explicit depth.

A point, a sequence of points, or a box in the product is described by
finitely many explicit coordinates plus a closed-form rule for every index
beyond them. Claims about "all coordinates" are checked exactly at the
explicit indices and symbolically on the rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import realsets as rs
from .errors import PreconditionError
from .methods import (
    LIM,
    Converges,
    MethodSpec,
    Product,
)
from .rational import Q, format_rat
from .realsets import RSet
from .reports import Report
from .sequences import SeqSpec, const
from .topology import hull, is_g_closed, is_g_connected, kernel


def factor_method(m: MethodSpec) -> MethodSpec:
    return m.factor if isinstance(m, Product) else m


# -- factor families ------------------------------------------------------

class Rule:
    """Total rule ``i -> RSet`` for indices ``i >= 1``."""

    def factor(self, i: int) -> RSet:
        raise NotImplementedError

    def apply(self, op: Callable[[RSet], RSet]) -> "Rule":
        """Image under a set operation that commutes with translation."""
        raise NotImplementedError

    @property
    def may_be_empty(self) -> bool:
        return False


@dataclass(frozen=True)
class Constant(Rule):
    a: RSet

    def factor(self, i):
        return self.a

    def apply(self, op):
        return Constant(op(self.a))

    @property
    def may_be_empty(self):
        return self.a.is_empty

    def __str__(self):
        return str(self.a)


@dataclass(frozen=True)
class Translated(Rule):
    """Factor ``i`` is ``i + base``."""

    base: RSet

    def factor(self, i):
        return rs.translate(self.base, i)

    def apply(self, op):
        return _translated(op(self.base))

    @property
    def may_be_empty(self):
        return self.base.is_empty

    def __str__(self):
        return f"i + {self.base}"


def ShiftedInterval(radius, lo_closed: bool = False, hi_closed: bool = False) -> Rule:
    """Factor ``i`` is the interval from ``i - radius`` to ``i + radius`` with the given flags."""
    r = Q(radius)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return _translated(rs.interval(-r, r, lo_closed, hi_closed) if r or (lo_closed and hi_closed) else RSet.empty())


def _translated(base: RSet) -> Rule:
    # the empty set and the line are translation invariant
    if base.is_empty or base.is_reals:
        return Constant(base)
    return Translated(base)


@dataclass(frozen=True)
class Explicit(Rule):
    factors: tuple
    beyond: Rule

    def factor(self, i):
        return self.factors[i - 1] if i <= len(self.factors) else self.beyond.factor(i)

    def apply(self, op):
        return Explicit(tuple(op(a) for a in self.factors), self.beyond.apply(op))

    @property
    def may_be_empty(self):
        return any(a.is_empty for a in self.factors) or self.beyond.may_be_empty

    def __str__(self):
        return "[" + "; ".join(str(a) for a in self.factors) + f"; beyond {self.beyond}]"


# -- boxes ----------------------------------------------------------------

@dataclass(frozen=True)
class DepthBox:
    """Factors ``1..d`` explicit, then ``tail.factor(i)`` for ``i > d``."""

    factors: tuple
    tail: Rule = Constant(RSet.reals())

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("depth must be at least 1")

    @classmethod
    def of_family(cls, rule: Rule, depth: int) -> "DepthBox":
        return cls(tuple(rule.factor(i) for i in range(1, depth + 1)), rule)

    @property
    def depth(self) -> int:
        return len(self.factors)

    def factor(self, i: int) -> RSet:
        return self.factors[i - 1] if i <= self.depth else self.tail.factor(i)

    @property
    def is_empty(self) -> bool:
        return any(a.is_empty for a in self.factors) or self.tail.may_be_empty

    def map(self, op: Callable[[RSet], RSet]) -> "DepthBox":
        return DepthBox(tuple(op(a) for a in self.factors), self.tail.apply(op))

    def contains(self, point: "PointRule") -> bool:
        """Exact membership; refutation needs one failing index."""
        for i in range(1, max(self.depth, point.explicit_depth) + 1):
            if point.at(i) not in self.factor(i):
                return False
        return _tail_contains(self.tail, point.tail_rule, max(self.depth, point.explicit_depth) + 1)

    def __str__(self):
        body = "; ".join(str(a) for a in self.factors)
        tail = "R" if isinstance(self.tail, Constant) and self.tail.a.is_reals else str(self.tail)
        return f"box[d={self.depth}]{{{body}; tail={tail}}}"

    def to_json(self):
        return {"depth": self.depth, "factors": [str(a) for a in self.factors], "tail": str(self.tail)}


# -- points and sequences of points ---------------------------------------

class PointRule:
    explicit_depth = 0

    def at(self, i: int) -> Fraction:
        raise NotImplementedError

    @property
    def tail_rule(self) -> "PointRule":
        return self


@dataclass(frozen=True)
class PConst(PointRule):
    c: Fraction = Fraction(0)

    def at(self, i):
        return Q(self.c)

    def __str__(self):
        return format_rat(Q(self.c))


@dataclass(frozen=True)
class PIndex(PointRule):
    """The point ``(1, 2, 3, ...)``."""

    def at(self, i):
        return Fraction(i)

    def __str__(self):
        return "i"


@dataclass(frozen=True)
class PRecip(PointRule):
    """The point ``(1, 1/2, 1/3, ...)``."""

    def at(self, i):
        return Fraction(1, i)

    def __str__(self):
        return "1/i"


@dataclass(frozen=True)
class PExplicit(PointRule):
    values: tuple
    beyond: PointRule = PConst()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Q(v) for v in self.values))

    @property
    def explicit_depth(self):
        return max(len(self.values), self.beyond.explicit_depth)

    def at(self, i):
        return self.values[i - 1] if i <= len(self.values) else self.beyond.at(i)

    @property
    def tail_rule(self):
        return self.beyond.tail_rule

    def __str__(self):
        return "(" + ", ".join(format_rat(v) for v in self.values) + f", then {self.beyond})"


def _tail_contains(rule: Rule, point: PointRule, start: int) -> bool:
    """Decide ``point.at(i) in rule.factor(i)`` for every ``i >= start``."""
    if isinstance(rule, Explicit):
        for i in range(start, len(rule.factors) + 1):
            if point.at(i) not in rule.factor(i):
                return False
        return _tail_contains(rule.beyond, point, max(start, len(rule.factors) + 1))
    if isinstance(rule, Constant):
        a = rule.a
        if a.is_reals:
            return True
        if isinstance(point, PConst):
            return point.at(1) in a
        if isinstance(point, PIndex):
            return _integers_in(a, start, 0)
        if isinstance(point, PRecip):
            return _recips_in(a, start)
    if isinstance(rule, Translated):
        b = rule.base
        if isinstance(point, PIndex):
            return Fraction(0) in b
        if isinstance(point, PConst):
            # c in i + b  <=>  i - c in -b
            return _integers_in(rs.negate(b), start, -point.at(1))
    raise PreconditionError(f"cannot decide tail membership of point rule {point} in {rule}")


def _integers_in(a: RSet, start: int, offset: Fraction) -> bool:
    """Whether ``i + offset`` lies in ``a`` for every integer ``i >= start``."""
    if not a.intervals or a.intervals[-1].hi != rs.INF:
        return False
    lo = a.intervals[-1].lo
    cut = start if lo == rs.NEG_INF else max(start, int(lo - offset) + 1)
    return all(i + offset in a for i in range(start, cut + 1))


def _recips_in(a: RSet, start: int) -> bool:
    """Whether ``1/i`` lies in ``a`` for every ``i >= start``."""
    for iv in a.intervals:
        if iv.lo <= 0 < iv.hi:
            cut = start if iv.hi == rs.INF else max(start, int(1 / iv.hi) + 1)
            return all(Fraction(1, i) in a for i in range(start, cut + 1))
    return False


class ProdSeq:
    """A sequence ``n -> x^n`` of points; ``coordinate(i)`` is the trace ``n -> (x^n)_i``."""

    def coordinate(self, i: int) -> SeqSpec:
        raise NotImplementedError

    def point(self, n: int) -> PointRule:
        raise NotImplementedError

    def values(self, n: int, depth: int) -> list:
        return [self.coordinate(i)(n) for i in range(1, depth + 1)]


@dataclass(frozen=True)
class PerCoordinate(ProdSeq):
    seqs: tuple
    beyond: SeqSpec = const(0)

    def coordinate(self, i):
        return self.seqs[i - 1] if i <= len(self.seqs) else self.beyond

    def point(self, n):
        return PExplicit(tuple(s(n) for s in self.seqs), PConst(self.beyond(n)))

    def __str__(self):
        return "percoord(" + "; ".join(str(s) for s in self.seqs) + f"; beyond={self.beyond})"


@dataclass(frozen=True)
class Example33Family(ProdSeq):
    """``(x_n)_i = i`` except ``(x_n)_n = 0``."""

    def coordinate(self, i):
        return const(i, [i] * (i - 1) + [0])

    def point(self, n):
        return PExplicit(tuple(range(1, n)) + (0,), PIndex())

    def __str__(self):
        return "example33"


@dataclass(frozen=True)
class Sigma(ProdSeq):
    """``(y^n)_i = x_i`` for ``i <= n`` and ``a_i`` beyond."""

    a: PointRule
    x: PointRule

    def coordinate(self, i):
        return const(self.x.at(i), [self.a.at(i)] * (i - 1))

    def point(self, n):
        return PExplicit(tuple(self.x.at(i) for i in range(1, n + 1)), self.a)

    def __str__(self):
        return f"sigma(a={self.a}; x={self.x})"


def product_limit(m: MethodSpec, s: ProdSeq, depth: int) -> list:
    f = factor_method(m)
    return [f.limit(s.coordinate(i)) for i in range(1, depth + 1)]


def product_in_domain(m: MethodSpec, s: ProdSeq, depth: int) -> bool:
    f = factor_method(m)
    return all(f.in_domain(s.coordinate(i)) for i in range(1, depth + 1))


# -- box operators --------------------------------------------------------

def box_hull(m: MethodSpec, b: DepthBox) -> DepthBox:
    f = factor_method(m)
    if b.is_empty:
        # the product is empty, so every factor of its hull is too
        return b.map(lambda a: a if a.is_empty else hull(f, a))
    return b.map(lambda a: hull(f, a))


def box_closed(m: MethodSpec, b: DepthBox) -> bool:
    if b.is_empty:
        return True
    f = factor_method(m)
    return box_hull(f, b) == b


def _require_preserves(m: MethodSpec, what: str):
    from .groups import standing_assumption

    f = factor_method(m)
    v = standing_assumption(f)
    if not v.holds:
        raise PreconditionError(
            f"{what} requires a method preserving G-convergence of subsequences; "
            f"{f.name} fails preserves-subsequences: {v.witness}")
    return v


def box_kernel(m: MethodSpec, b: DepthBox) -> DepthBox:
    _require_preserves(m, "box_kernel")
    if not (isinstance(b.tail, Constant) and b.tail.a.is_reals):
        raise PreconditionError("box_kernel is only sound for finite depth with tail R")
    f = factor_method(m)
    return b.map(lambda a: kernel(f, a))


# -- scenarios ------------------------------------------------------------

def example33_scenario(depth: int) -> Report:
    """Kernel of an infinite product strictly smaller than the product of kernels."""
    if depth < 2:
        raise PreconditionError("depth must be at least 2")
    q = Fraction(1, 4)
    family = ShiftedInterval(q)
    rep = Report("example33", meta={"depth": depth, "factors": "A_i = (i-1/4, i+1/4)"})
    fam = Example33Family()
    y = PIndex()
    box = DepthBox.of_family(family, depth)

    bad = [i for i in range(1, depth + 1) if kernel(LIM, family.factor(i)) != family.factor(i)]
    sym = family.apply(lambda a: kernel(LIM, a)) == family
    rep.add("a: kernel(A_i) = A_i", not bad and sym, failing=bad, symbolic_tail=sym)

    rep.add("b: y_i = i lies in kernel(A_i)", all(y.at(i) in kernel(LIM, family.factor(i))
                                                for i in range(1, depth + 1)),
            y=[y.at(i) for i in range(1, depth + 1)])

    misses = {}
    for n in range(1, depth + 1):
        x = fam.point(n)
        assert x.at(n) == 0
        misses[n] = {"index": n, "value": x.at(n), "in_A_n": x.at(n) in family.factor(n),
                     "in_box": box.contains(x)}
    rep.add("c: x_n leaves the product at index n",
            all(not v["in_A_n"] and not v["in_box"] for v in misses.values()), points=misses)

    traces = {}
    for i in range(1, depth + 1):
        tr = fam.coordinate(i)
        traces[i] = {"trace": str(tr), "limit": LIM.limit(tr)}
    lims = product_limit(Product(LIM), fam, depth)
    rep.add("d: coordinate traces converge to y",
            all(r == Converges(Fraction(i)) for i, r in enumerate(lims, 1)), traces=traces)

    y_in_kernels = all(y.at(i) in kernel(LIM, family.factor(i)) for i in range(1, depth + 1))
    reached = all(not v["in_box"] for v in misses.values()) and all(
        r == Converges(Fraction(i)) for i, r in enumerate(lims, 1))
    rep.add("e: y in prod of kernels but not in kernel of prod", y_in_kernels and reached,
            conclusion="x_n valued outside the product with product limit y, so y is not in its kernel")
    return rep


def projection_suite(m: MethodSpec, depth: int, corpus: list, boxes: list = None) -> Report:
    f = factor_method(m)
    rep = Report("projections", meta={"method": f.name, "depth": depth})
    prod = Product(f)
    mismatches = []
    for s in corpus:
        g = prod.limit(s, depth)
        for i in range(1, depth + 1):
            if g[i - 1] != f.limit(s.coordinate(i)):
                mismatches.append({"seq": str(s), "index": i})
    rep.add("i: projections commute with the product method", not mismatches, failures=mismatches,
            cases=len(corpus) * depth)

    try:
        _require_preserves(f, "closed-projection checks")
        gated = False
        why = ""
    except PreconditionError as e:
        gated = True
        why = str(e)

    boxes = boxes or [DepthBox((rs.interval(0, 1), rs.interval(2, 3)))]
    bad = []
    for b in boxes:
        if box_closed(f, b):
            for i in range(1, b.depth + 1):
                if not is_g_closed(f, b.factor(i)):
                    bad.append({"box": str(b), "index": i})
    rep.add("ii: projections of closed boxes are closed", not bad, informational=gated,
            failures=bad, hypothesis=why or "holds")

    pre = []
    for b in boxes:
        a = b.factor(1)
        if is_g_closed(f, a):
            cyl = DepthBox((a,) + (RSet.reals(),) * (depth - 1))
            if not box_closed(f, cyl):
                pre.append({"set": str(a)})
    rep.add("iii: preimages of closed sets under the first projection are closed", not pre,
            informational=gated, failures=pre, hypothesis=why or "holds")
    return rep


def sigma_density_scenario(depth: int, a: PointRule, x: PointRule) -> Report:
    if depth < 1:
        raise PreconditionError("depth must be at least 1")
    s = Sigma(a, x)
    rep = Report("sigma", meta={"depth": depth, "a": str(a), "x": str(x)})
    traces = {i: str(s.coordinate(i)) for i in range(1, depth + 1)}
    ok = all(LIM.limit(s.coordinate(i)) == Converges(x.at(i)) for i in range(1, depth + 1))
    rep.add("traces eventually constant at x_i", ok, traces=traces)
    lims = product_limit(Product(LIM), s, depth)
    rep.add("product limit is x", lims == [Converges(x.at(i)) for i in range(1, depth + 1)],
            limit=lims)
    diffs = []
    for n in range(1, depth + 1):
        y = s.point(n)
        far = all(y.at(i) == a.at(i) for i in range(n + 1, depth + 1)) and y.beyond == a
        near = all(y.at(i) == x.at(i) for i in range(1, n + 1))
        if not (far and near):
            diffs.append(n)
    rep.add("each y^n differs from a in finitely many coordinates", not diffs, failing=diffs,
            example={n: [s.point(n).at(i) for i in range(1, depth + 1)] for n in range(1, min(depth, 3) + 1)})
    return rep


def cylinder_separation(m: MethodSpec, b: DepthBox):
    """A separation of the box of the form ``F x rest``, ``K x rest`` from a split factor."""
    f = factor_method(m)
    for i in range(1, b.depth + 1):
        rep = is_g_connected(f, b.factor(i))
        if not rep.connected:
            fi, ki = rep.separation
            pf = DepthBox(tuple(fi if j == i else b.factor(j) for j in range(1, b.depth + 1)), b.tail)
            pk = DepthBox(tuple(ki if j == i else b.factor(j) for j in range(1, b.depth + 1)), b.tail)
            # relative closedness in the box, through the box hull
            ok = all(
                _box_meet(box_hull(f, p), b) == p for p in (pf, pk))
            if ok:
                return i, pf, pk
    return None


def _box_meet(p: DepthBox, q: DepthBox) -> DepthBox:
    return DepthBox(tuple(p.factor(i) & q.factor(i) for i in range(1, p.depth + 1)), p.tail)


def product_connectedness(m: MethodSpec, factors: list, depth: int = None) -> Report:
    depth = depth or len(factors)
    if depth > 3 or len(factors) != depth:
        raise PreconditionError("product connectedness is decided for depth <= 3 with one factor per index")
    f = factor_method(m)
    b = DepthBox(tuple(factors))
    per = [is_g_connected(f, a) for a in factors]
    all_conn = all(r.connected for r in per)
    sep = cylinder_separation(f, b)
    rep = Report("product-connectedness", meta={"method": f.name, "box": str(b)})
    rep.add("factorwise criterion", True, factors=[r.to_json() for r in per], box_connected=all_conn)
    if all_conn:
        rep.add("connected factors give a connected box", sep is None)
    else:
        witness = None if sep is None else {"factor": sep[0], "F": str(sep[1]), "K": str(sep[2])}
        rep.add("a disconnected factor separates the box", sep is not None, witness=witness)
    rep.meta["connected"] = all_conn and sep is None
    return rep
