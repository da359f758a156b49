"""Seeded, deterministic property suites, addressable by name from the CLI."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import realsets as rs
from .corpus import (
    CORPUS_VERSION,
    STANDARD_FAMILIES,
    addable_pairs,
    convergent_corpus,
    standard_corpus,
    standard_shifts,
)
from .errors import PreconditionError
from .groups import (
    NeighborhoodBase,
    cesaro_intersection_counterexample,
    check_AU_open,
    check_closure_bound,
    check_group_axioms,
    check_inverse_open,
    check_neighborhood_criterion,
    check_symmetric_closure,
    check_topology,
    check_translated_base,
    check_translations,
    closure_via_base,
    default_u,
    hypothesis_necessity_suite,
    standing_assumption,
    symmetrize,
)
from .methods import (
    CESARO,
    LIM,
    STAT,
    SYMBOLIC_METHODS,
    BandRows,
    CesaroRows,
    Cesaro,
    FixedRows,
    Matrix,
    MethodSpec,
    check_matrix_regular,
    check_preserves_subsequences,
    check_regular_empirical,
    check_subsequential,
    check_translate_regular,
)
from .oracle import check_hull, check_kernel
from .products import (
    Constant,
    DepthBox,
    PConst,
    PExplicit,
    PIndex,
    PRecip,
    ShiftedInterval,
    box_closed,
    box_hull,
    example33_scenario,
    product_connectedness,
    sigma_density_scenario,
)
from .realsets import RSet
from .reports import SuiteResult
from .sequences import affine, per, spike, Squares, AP
from .topology import hull, image_law, is_g_closed, is_g_connected, union_law

SUITES = {}
DEFAULT_SEED = 7


def suite(name: str, trials: int):
    def deco(fn):
        SUITES[name] = (fn, trials)
        return fn
    return deco


def run_suite(name: str, trials: int = None, seed: int = DEFAULT_SEED, method: MethodSpec = None) -> SuiteResult:
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    fn, default_trials = SUITES[name]
    trials = default_trials if trials is None else trials
    if trials < 1:
        raise PreconditionError("trials must be positive")
    t0 = time.perf_counter()
    res = fn(trials, seed, method)
    res.wall_time = time.perf_counter() - t0
    return res


def _fails(report) -> list:
    return [{"check": c.name, "detail": c.detail} for c in report.failures]


# -- product laws ---------------------------------------------------------

def random_box(rng: random.Random) -> DepthBox:
    depth = rng.randint(1, 4)
    factors = []
    for _ in range(depth):
        r = rng.random()
        if r < 0.05:
            a = RSet.empty()
        elif r < 0.3:
            a = rs.closure(rs.random_rset(rng, point_prob=0.2))
        else:
            a = rs.random_rset(rng, point_prob=0.2)
        factors.append(a)
    t = rng.random()
    if t < 0.4:
        tail = Constant(RSet.reals())
    elif t < 0.7:
        tail = Constant(rs.random_rset(rng, point_prob=0.2))
    else:
        flag = rng.random() < 0.5
        tail = ShiftedInterval(Fraction(rng.randint(1, 8), rng.randint(1, 8)), flag, flag)
    return DepthBox(tuple(factors), tail)


@suite("thm3.1", 200)
def _thm31(trials, seed, method):
    rng = random.Random(seed)
    res = SuiteResult("thm3.1", params={"trials": trials, "seed": seed})
    for case in range(trials):
        b = random_box(rng)
        bad = []
        for m in SYMBOLIC_METHODS:
            h = box_hull(m, b)
            # componentwise, at the explicit indices and a few indices past the depth
            for i in range(1, b.depth + 4):
                fi = b.factor(i)
                want = fi if b.is_empty and fi.is_empty else hull(m, fi)
                if h.factor(i) != want:
                    bad.append({"method": m.name, "index": i, "box_hull": str(h.factor(i)),
                                "factor_hull": str(want)})
            all_closed = all(is_g_closed(m, b.factor(i)) for i in range(1, b.depth + 4))
            if isinstance(b.tail, Constant) and not is_g_closed(m, b.tail.a):
                all_closed = False
            if all_closed and not box_closed(m, b):
                bad.append({"method": m.name, "closed_factors_but_box_not_closed": str(b)})
        res.record(case, not bad, {"box": str(b), "failures": bad})
    return res


@suite("ex33", 4)
def _ex33(trials, seed, method):
    depths = [2, 4, 8, 16, 32, 64][: max(trials, 1)]
    res = SuiteResult("ex33", params={"depths": depths})
    for case, d in enumerate(depths):
        rep = example33_scenario(d)
        res.record(case, rep.passed, {"depth": d, "failures": _fails(rep)})
    return res


# -- connectedness --------------------------------------------------------

def _random_interval(rng, around=None) -> RSet:
    a = rs.random_rat(rng, 16, 32)
    b = rs.random_rat(rng, 16, 32)
    lo, hi = min(a, b), max(a, b)
    if around is not None:
        lo, hi = min(lo, around), max(hi, around)
    if lo == hi:
        return RSet.point(lo)
    return rs.interval(lo, hi, lo == around or rng.random() < 0.5, hi == around or rng.random() < 0.5)


@suite("thm4.5", 50)
def _thm45(trials, seed, method):
    rng = random.Random(seed)
    res = SuiteResult("thm4.5", params={"trials": trials, "seed": seed})
    corpus = standard_corpus()
    case = 0
    for _ in range(trials):
        m = SYMBOLIC_METHODS[rng.randrange(3)]
        c = rs.random_rat(rng, 16, 32)
        fam = [_random_interval(rng, c) for _ in range(rng.randint(1, 4))]
        law = union_law(m, fam)
        res.record(case, law.holds and law.applicable, {"law": "union", "detail": law.to_json()})
        case += 1
        f = affine(rs.random_rat(rng, 8, 4) or 1, rs.random_rat(rng, 8, 8))
        law = image_law(m, f, _random_interval(rng), corpus)
        res.record(case, law.holds and law.applicable, {"law": "image", "detail": law.to_json()})
        case += 1
        rep = product_connectedness(m, [_random_interval(rng), _random_interval(rng)], 2)
        res.record(case, rep.passed and rep.meta["connected"], {"law": "product", "failures": _fails(rep)})
        case += 1
        factors = [rs.random_rset(rng, max_components=2) for _ in range(3)]
        rep = product_connectedness(m, factors, 3)
        expect = all(is_g_connected(m, a).connected for a in factors)
        res.record(case, rep.passed and rep.meta["connected"] == expect,
                   {"law": "factorwise", "factors": [str(a) for a in factors], "failures": _fails(rep)})
        case += 1
    sigmas = [(PConst(0), PIndex()), (PConst(1), PRecip()), (PIndex(), PIndex()),
              (PExplicit((5, -1, Fraction(1, 3)), PConst(2)), PIndex())]
    for a, x in sigmas:
        rep = sigma_density_scenario(8, a, x)
        res.record(case, rep.passed, {"sigma": f"a={a}; x={x}", "failures": _fails(rep)})
        case += 1
    return res


# -- group topology ------------------------------------------------------

def group_topology_report(m: MethodSpec, a: RSet, other: RSet, k_max: int = 64) -> list:
    """All group-topology checks for one set; returns failing checks."""
    out = []
    base = NeighborhoodBase(k_max)
    inner = rs.interior(a)
    c = rs.sample_point(inner) if not inner.is_empty else Fraction(0)
    u = rs.translate(inner, -c) if not inner.is_empty else default_u(1)

    def take(rep, tag):
        out.extend({"area": tag, **f} for f in _fails(rep))

    take(check_inverse_open(m, u), "inverse")
    take(check_translations(m, standard_corpus()[:16], [c, -c] + rs.endpoints(a)[:2]), "translations")
    for x in [c] + rs.endpoints(a)[:2]:
        take(check_translated_base(m, u, x), "translated base")
    # fundamental system: the translated base refines every open neighbourhood of c
    if not inner.is_empty and not any(rs.translate(default_u(k), c) <= inner for k in range(1, k_max + 1)):
        out.append({"check": "fundamental system", "point": c, "set": str(inner)})
    opens = [inner, rs.interior(other), default_u(3), u]
    top = check_topology(m, opens)
    if not top.passed:
        out.append({"check": "topology", "report": top.to_json()})
    v = symmetrize(u)
    if not (v == -v and v <= u and 0 in v and is_g_closed(m, rs.complement(v))):
        out.append({"check": "symmetric base", "U": str(u), "V": str(v)})
    take(check_AU_open(m, a, u), "AU open")
    for k in (1, 2, 8, k_max):
        take(check_AU_open(m, a, default_u(k)), "AU open")
    for k in range(1, k_max + 1):
        take(check_closure_bound(m, a, default_u(k)), "closure bound")
    take(closure_via_base(m, a, base), "closure via base")
    take(check_symmetric_closure(m, a | -a), "symmetric closure")
    from .oracle import grid

    for x in sorted(set(grid(a)) | set(rs.endpoints(a))):
        take(check_neighborhood_criterion(m, a, x, base), "neighbourhood criterion")
    return out


@suite("sec5", 50)
def _sec5(trials, seed, method):
    m = method or LIM
    v = standing_assumption(m)
    if not v.holds:
        raise PreconditionError(
            f"{m.name} does not preserve G-convergence of subsequences; run sec5-counterexamples instead")
    rng = random.Random(seed)
    res = SuiteResult("sec5", params={"trials": trials, "seed": seed, "method": m.name, "K": 64})
    sets = [rs.random_rset(rng) for _ in range(trials + 1)]
    for case in range(trials):
        bad = group_topology_report(m, sets[case], sets[case + 1])
        res.record(case, not bad, {"set": str(sets[case]), "failures": bad})
    corpus = standard_corpus()
    rep = check_translations(m, corpus, standard_shifts())
    res.record(trials, rep.passed, {"check": "translations over corpus x 20 shifts", "failures": _fails(rep)})
    rep = check_group_axioms(m, addable_pairs())
    res.record(trials + 1, rep.passed, {"check": "group axioms", "failures": _fails(rep)})
    rep = hypothesis_necessity_suite(m)
    res.record(trials + 2, rep.passed, {"check": "hypothesis necessity", "failures": _fails(rep)})
    return res


@suite("sec5-counterexamples", 1)
def _sec5_cx(trials, seed, method):
    m = method or CESARO
    res = SuiteResult("sec5-counterexamples", params={"method": m.name})
    v = standing_assumption(m)
    if v.holds:
        raise PreconditionError(f"{m.name} satisfies the standing assumption; nothing to refute")
    res.record(0, v.witness is not None, {"check": "preserves-subsequences counterexample", "witness": v.witness})
    rep = hypothesis_necessity_suite(m)
    res.record(1, rep.passed, {"check": "hypothesis necessity", "failures": _fails(rep)})
    res.notes.append("out of hypothesis: " + ", ".join(rep.meta.get("out_of_hypothesis", [])))
    if isinstance(m, Cesaro):
        t = cesaro_intersection_counterexample()
        cx = t.counterexample or {}
        ok = (not t.passed and cx.get("intersection") == "(-inf,1) u (2,5) u (6,inf)"
              and cx.get("missing") == "(2,5)")
        res.record(2, ok, {"check": "open sets not closed under intersection", "counterexample": cx})
        inv = check_inverse_open(m, rs.interval(-1, 2, False, False))
        res.record(3, not inv.passed, {"check": "(-1,2) is not a Cesaro-open neighbourhood",
                                       "report": inv.to_json()})
    else:
        # statistical hulls are ordinary closures, so the group-topology conclusions still hold here
        rep = check_topology(m, [rs.interval(0, 2, False, False), rs.interval(1, 3, False, False)])
        res.notes.append(f"{m.name}: intersections of open sets remain open ({rep.passed}); "
                         "the conclusions survive although the hypothesis fails")
    return res


# -- traits ---------------------------------------------------------------

EXPECTED_FLAGS = ("regular", "subsequential", "preserves_subsequences", "translate_regular")


@suite("traits", 1)
def _traits(trials, seed, method):
    res = SuiteResult("traits", params={"corpus_version": CORPUS_VERSION})
    corpus = standard_corpus()
    convergent = convergent_corpus(100)
    shifts = standard_shifts(20)
    case = 0
    st = check_matrix_regular(CesaroRows())
    res.record(case, st.holds, {"check": "cesaro rows regular", "verdict": st.to_json()})
    case += 1
    for rows, cond in ((BandRows(((0, Fraction(2)),)), "iii"), (FixedRows(((1, Fraction(1)),)), "ii")):
        st = check_matrix_regular(rows)
        ok = not st.holds and cond in st.witness.get("failing", [])
        res.record(case, ok, {"check": f"{rows} fails ({cond})", "verdict": st.to_json()})
        case += 1
    for m in SYMBOLIC_METHODS:
        verdicts = {
            "regular": check_regular_empirical(m, convergent),
            "preserves_subsequences": check_preserves_subsequences(m, corpus, STANDARD_FAMILIES),
            "translate_regular": check_translate_regular(m, corpus, shifts),
            "subsequential": _subsequential(m, corpus),
        }
        for flag, v in verdicts.items():
            cached = getattr(m, flag)
            res.record(case, v.holds == cached, {"method": m.name, "flag": flag, "cached": cached,
                                                 "verdict": v.to_json()})
            case += 1
    cx = check_preserves_subsequences(CESARO, [per([], [0, 1])], [AP(2, 2)])
    w = cx.witness or {}
    res.record(case, w.get("limit", {}).get("value") == "1/2" and w.get("subsequence_limit", {}).get("value") == "1",
               {"check": "cesaro witness", "witness": w})
    case += 1
    cx = check_preserves_subsequences(STAT, [spike(0, 1, Squares())], [Squares()])
    w = cx.witness or {}
    res.record(case, w.get("limit", {}).get("value") == "0" and w.get("subsequence_limit", {}).get("value") == "1",
               {"check": "statistical witness", "witness": w})
    case += 1
    mat = Matrix(CesaroRows())
    agree = all(mat.limit(s) == CESARO.limit(s) for s in convergent)
    res.record(case, agree, {"check": "matrix(cesaro rows) agrees with cesaro"})
    return res


def _subsequential(m, corpus):
    """First failing verdict over the corpus, else a passing one."""
    from .methods import TraitVerdict

    n = 0
    for s in corpus:
        if m.in_domain(s):
            v = check_subsequential(m, s)
            n += 1
            if not v.holds:
                return v
    return TraitVerdict("subsequential", True, checked=n)


# -- hull oracle ----------------------------------------------------------

@suite("oracle-hull", 50)
def _oracle(trials, seed, method):
    methods = [method] if method is not None else list(SYMBOLIC_METHODS)
    res = SuiteResult("oracle-hull", params={"trials": trials, "seed": seed,
                                             "methods": [m.name for m in methods]})
    rng = random.Random(seed)
    sets = [rs.random_rset(rng) for _ in range(trials)]
    case = 0
    for m in methods:
        for a in sets:
            r = check_hull(m, a)
            res.record(case, r.passed, r.to_json())
            case += 1
        # kernels against the definitional reading: hulls of complements
        for a in sets:
            r = check_kernel(m, a)
            res.record(case, r.passed, dict(r.to_json(), kernel_of=str(a)))
            case += 1
    return res
