"""Method-relative topology on representable subsets of the real line.

The hull of a set is the set of generalized limits of sequences valued in
it. For the shipped methods it has a closed form:

* ordinary and statistical limits: the ordinary closure;
* Cesaro means: the smallest closed interval containing the set (unbounded
  ends stay open, since infinity is not a point of the line).

Everything else (kernels, closed/open predicates, closures, interiors,
relative closedness, connectedness) is derived from the hull. The closed
forms are checked independently by :mod:`gconverge.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import realsets as rs
from .errors import GuardError, PreconditionError, UnsupportedMethod
from .methods import Cesaro, Lim, MethodSpec, Product, Statistical
from .realsets import RSet

CLOSURE_GUARD = 8
SPLIT_GUARD = 20


def _factor(m: MethodSpec) -> MethodSpec:
    if isinstance(m, Product):
        raise UnsupportedMethod("product methods act on boxes; use gconverge.products")
    return m


def hull(m: MethodSpec, a: RSet) -> RSet:
    m = _factor(m)
    if a.is_empty:
        return a
    if isinstance(m, (Lim, Statistical)):
        return rs.closure(a)
    if isinstance(m, Cesaro):
        return rs.convex_hull(a)
    raise UnsupportedMethod(f"{m}: no closed-form hull; use the achievability oracle")


def kernel(m: MethodSpec, a: RSet) -> RSet:
    return rs.complement(hull(m, rs.complement(a)))


def is_g_closed(m: MethodSpec, a: RSet) -> bool:
    return hull(m, a) == a


def is_g_open(m: MethodSpec, a: RSet) -> bool:
    return rs.is_subset(a, kernel(m, a))


def g_closure_trace(m: MethodSpec, a: RSet) -> tuple:
    """``(closure, iterations)``: hull iterated to a fixed point."""
    cur = a
    for i in range(CLOSURE_GUARD + 1):
        nxt = hull(m, cur)
        if nxt == cur:
            return cur, i
        cur = nxt
    raise GuardError(f"non-idempotent hull beyond guard ({CLOSURE_GUARD} iterations) for {a}")


def g_closure(m: MethodSpec, a: RSet) -> RSet:
    return g_closure_trace(m, a)[0]


def g_interior(m: MethodSpec, a: RSet) -> RSet:
    """Largest fixed point of the kernel inside ``a``."""
    cur = kernel(m, a)
    for _ in range(CLOSURE_GUARD):
        nxt = kernel(m, cur) & cur
        if nxt == cur:
            return cur
        cur = nxt
    raise GuardError(f"kernel iteration did not stabilize within {CLOSURE_GUARD} steps for {a}")


def is_g_dense(m: MethodSpec, a: RSet) -> bool:
    return g_closure(m, a).is_reals


def is_relatively_g_closed(m: MethodSpec, f: RSet, a: RSet) -> bool:
    """Whether ``f = k & a`` for some G-closed ``k``; the G-closure of ``f`` is the only candidate."""
    if not rs.is_subset(f, a):
        raise PreconditionError(f"{f} is not a subset of {a}")
    return (g_closure(m, f) & a) == f


@dataclass
class ConnectednessReport:
    connected: bool
    separation: Optional[tuple] = None  # (F, K)
    splits_examined: int = 0
    components: int = 0

    def to_json(self):
        sep = None
        if self.separation is not None:
            sep = {"F": str(self.separation[0]), "K": str(self.separation[1])}
        return {"connected": self.connected, "separation": sep,
                "splits_examined": self.splits_examined, "components": self.components}

    def __bool__(self):
        return self.connected


def is_g_connected(m: MethodSpec, a: RSet) -> ConnectednessReport:
    """Search for a split of ``a`` into two nonempty, disjoint, relatively G-closed pieces.

    Splits are enumerated at the granularity of ordinary components. This is
    complete because every G-closed set of the shipped methods is closed in
    the ordinary sense, so no interval can be split; the premise is
    re-checked here on every hull the search depends on.
    """
    if a.is_empty:
        raise PreconditionError("connectedness is defined for nonempty sets")
    comps = rs.components(a)
    c = len(comps)
    if c > SPLIT_GUARD:
        raise GuardError(f"{c} components exceeds the split guard of {SPLIT_GUARD}")
    for piece in comps + [a]:
        if not rs.is_closed(hull(m, piece)):
            raise PreconditionError(f"{m}: hull of {piece} is not closed; component-level search unsound")
    examined = 0
    for mask in range(1, 2**c - 1):
        examined += 1
        f = RSet(tuple(iv for i, iv in enumerate(a.intervals) if mask >> i & 1))
        k = RSet(tuple(iv for i, iv in enumerate(a.intervals) if not mask >> i & 1))
        if is_relatively_g_closed(m, f, a) and is_relatively_g_closed(m, k, a):
            assert (f | k) == a and (f & k).is_empty and f and k
            return ConnectednessReport(False, (f, k), examined, c)
    return ConnectednessReport(True, None, examined, c)


# -- connectedness laws ---------------------------------------------------

@dataclass
class LawResult:
    law: str
    holds: bool
    applicable: bool = True
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"law": self.law, "holds": self.holds, "applicable": self.applicable, "detail": self.detail}


def union_law(m: MethodSpec, family: list) -> LawResult:
    """Connected sets with a common point have a connected union."""
    common = family[0]
    for s in family[1:]:
        common = common & s
    reports = [is_g_connected(m, s) for s in family]
    detail = {"family": [str(s) for s in family], "common": str(common)}
    if common.is_empty or not all(reports):
        return LawResult("union", True, False, detail)
    union = family[0]
    for s in family[1:]:
        union = union | s
    rep = is_g_connected(m, union)
    detail.update(union=str(union), report=rep.to_json())
    return LawResult("union", rep.connected, True, detail)


def image_law(m: MethodSpec, f, a: RSet, corpus) -> LawResult:
    """A G-continuous affine image of a connected set is connected."""
    from .methods import check_g_continuity

    cont = check_g_continuity(m, f, corpus)
    detail = {"map": str(f), "set": str(a), "continuity": cont.to_json()}
    if not cont.holds or not is_g_connected(m, a):
        return LawResult("image", True, False, detail)
    image = f.image(a)
    rep = is_g_connected(m, image)
    detail.update(image=str(image), report=rep.to_json())
    return LawResult("image", rep.connected, True, detail)
