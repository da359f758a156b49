"""Acceptance criteria 1-10, one PASS/FAIL line each (run with ``-s`` to see them)."""

import random
import subprocess
import sys
import time
from fractions import Fraction

from gconverge import realsets as rs
from gconverge.cli import run
from gconverge.groups import NeighborhoodBase, cesaro_intersection_counterexample, closure_via_base
from gconverge.methods import CESARO, LIM
from gconverge.parsing import parse_set
from gconverge.products import example33_scenario, sigma_density_scenario, PConst, PIndex
from gconverge.realsets import RSet
from gconverge.suites import run_suite
from gconverge.topology import is_g_connected, is_g_open, kernel


def verdict(n: int, ok: bool, detail: str = ""):
    print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_example33_depth16():
    t0 = time.perf_counter()
    rep = example33_scenario(16)
    dt = time.perf_counter() - t0
    names = [c.name[0] for c in rep.checks]
    ok = rep.passed and names == list("abcde") and dt < 1.0
    verdict(1, ok, f"5 sub-checks, {dt * 1000:.1f} ms")


def test_criterion_02_box_hull_law():
    res = run_suite("thm3.1", 200)
    verdict(2, res.passed and res.cases == 200, f"{res.passes}/{res.cases} boxes x 3 methods")


def test_criterion_03_hull_oracle():
    t0 = time.perf_counter()
    res = run_suite("oracle-hull", 50)
    dt = time.perf_counter() - t0
    # two checks (hull, kernel) per set and method
    verdict(3, res.passed and res.cases == 2 * 50 * 3 and dt < 60, f"{res.passes}/{res.cases} in {dt:.1f} s")


def _traits():
    return run_suite("traits")


def test_criterion_04_regularity():
    res = _traits()
    rows = [c for c in res.records
            if c.get("check") == "cesaro rows regular" or " fails (" in c.get("check", "")]
    flags = [c for c in res.records if c.get("flag") == "regular"]
    ok = (len(rows) == 3 and all(c["ok"] for c in rows)
          and len(flags) == 3 and all(c["ok"] and c["verdict"]["holds"] for c in flags)
          and all(c["verdict"]["checked"] == 100 for c in flags))
    verdict(4, ok, "cesaro rows regular; (iii) and (ii) counterexamples; 3 methods x 100 sequences")


def test_criterion_05_trait_witnesses():
    res = _traits()
    by = {(c.get("method"), c.get("flag")): c for c in res.records if "flag" in c}
    lim_ok = by[("lim", "preserves_subsequences")]["verdict"]["holds"]
    ces = next(c for c in res.records if c.get("check") == "cesaro witness")
    stat = next(c for c in res.records if c.get("check") == "statistical witness")
    ok = (lim_ok and ces["ok"] and stat["ok"]
          and not by[("cesaro", "preserves_subsequences")]["verdict"]["holds"]
          and not by[("stat", "preserves_subsequences")]["verdict"]["holds"]
          and res.passed)
    verdict(5, ok, "lim preserves; cesaro 1/2 vs 1; stat 0 vs 1")


def test_criterion_06_connectedness():
    unit = rs.interval(0, 1)
    two = unit | rs.interval(2, 3)
    lim_sep = is_g_connected(LIM, two)
    table = [
        is_g_connected(LIM, unit).connected,
        not lim_sep.connected and lim_sep.separation == (unit, rs.interval(2, 3)),
        is_g_connected(CESARO, unit).connected,
        not is_g_connected(CESARO, RSet.point(0, 1)).connected,
    ]
    rng = random.Random(2024)
    agree = 0
    for _ in range(500):
        a = rs.random_rset(rng, point_prob=0.2)
        agree += is_g_connected(LIM, a).connected == rs.is_connected_ordinary(a)
    verdict(6, all(table) and agree == 500, f"table {sum(table)}/4, agreement {agree}/500")


def test_criterion_07_laws_and_sigma():
    res = run_suite("thm4.5", 50)
    kinds = {}
    for c in res.records:
        kinds.setdefault(c.get("law", "sigma" if "sigma" in c else "?"), []).append(c["ok"])
    directions = {c["failures"] == [] for c in res.records if c.get("law") == "factorwise"}
    sig = sigma_density_scenario(8, PConst(0), PIndex())
    ok = res.passed and sig.passed and set(kinds) >= {"union", "image", "product", "factorwise", "sigma"}
    verdict(7, ok and directions == {True}, f"{res.passes}/{res.cases} law cases; sigma depth 8 passed")


def test_criterion_07_factorwise_both_directions():
    from gconverge.products import product_connectedness
    conn = product_connectedness(LIM, [rs.interval(0, 1)] * 3)
    split = product_connectedness(LIM, [rs.interval(0, 1), RSet.point(0, 2), rs.interval(0, 1)])
    assert conn.passed and conn.meta["connected"]
    assert split.passed and not split.meta["connected"]


def test_criterion_08_group_topology_lim():
    res = run_suite("sec5", 50, method=LIM)
    rng = random.Random(11)
    gaps_ok = True
    for _ in range(10):
        a = rs.random_rset(rng)
        for k in (1, 2, 3, 8, 16, 64):
            rep = closure_via_base(LIM, a, NeighborhoodBase(k))
            gaps_ok &= rep.passed and rep.meta["gap_K"] <= Fraction(1, k)
    verdict(8, res.passed and gaps_ok, f"{res.passes}/{res.cases} cases; gap <= 1/K at K in 1..64")


def test_criterion_09_hypothesis_necessity():
    a = cesaro_intersection_counterexample()
    b = cesaro_intersection_counterexample()
    cx = a.counterexample
    inter = parse_set("(-inf,1) u (2,5) u (6,inf)")
    exact = (cx == b.counterexample and cx["intersection"] == str(inter)
             and not is_g_open(CESARO, inter) and kernel(CESARO, inter) == parse_set("(-inf,1) u (6,inf)"))
    traits = _traits()
    tr = [c for c in traits.records if c.get("flag") == "translate_regular"]
    ok = exact and len(tr) == 3 and all(c["verdict"]["holds"] for c in tr)
    verdict(9, ok, f"counterexample missing {cx['missing']}; translate regular for 3 methods x 20 shifts")


def test_criterion_10_cli(capsys):
    rng = random.Random(10)
    trips = 0
    for _ in range(500):
        a = rs.random_rset(rng, point_prob=0.2)
        trips += parse_set(str(a)) == a
    cmd = [sys.executable, "-m", "gconverge.cli", "--json", "suite", "thm3.1", "--trials", "20"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    codes = [
        run(["hull", "--method", "cesaro", "{0} u {1}"]) == 0,
        run(["hull", "--method", "matrix:cesaro", "[0,1]"]) == 2,
        run(["hull", "[0,"]) == 2,
        run(["no-such-verb"]) == 2,
        run(["suite", "sec5", "--method", "cesaro"]) == 2,
        run(["closure-base", "--set", "(0,1)", "--K", "8"]) == 0,
    ]
    capsys.readouterr()
    ok = trips == 500 and outs[0] == outs[1] and all(codes)
    verdict(10, ok, f"round-trip {trips}/500; identical suite JSON; exit codes {sum(codes)}/{len(codes)}")


def test_failing_suite_exits_1(monkeypatch, capsys):
    # a suite that fails must exit 1
    from gconverge import suites

    fn, trials = suites.SUITES["ex33"]
    monkeypatch.setitem(suites.SUITES, "ex33", (lambda t, s, m: _failing(fn(t, s, m)), trials))
    assert run(["suite", "ex33", "--trials", "1"]) == 1
    assert "injected" in capsys.readouterr().out


def _failing(res):
    res.record(res.cases, False, {"injected": True})
    return res
