"""Structured pass/fail reports shared by scenarios, suites and the CLI."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .rational import format_rat

SCHEMA = 1


def jsonable(obj):
    """Convert report payloads (rationals, sets, sequences, verdicts) to plain JSON values."""
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rat(obj)
    if isinstance(obj, float):
        return format_rat(obj) if math.isinf(obj) else obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    informational: bool = False

    def to_json(self):
        out = {"name": self.name, "passed": self.passed, "detail": jsonable(self.detail)}
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, informational: bool = False, **detail) -> Check:
        c = Check(name, bool(passed), detail, informational)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.informational))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed and not c.informational]

    def to_json(self):
        return {"schema": SCHEMA, "report": self.title, "passed": self.passed,
                "meta": jsonable(self.meta), "checks": [c.to_json() for c in self.checks]}

    def render(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "info" if c.informational else ("ok" if c.passed else "FAIL")
            lines.append(f"  [{mark:>4}] {c.name}")
            if not c.passed and not c.informational and c.detail:
                lines.append("         " + json.dumps(jsonable(c.detail), sort_keys=True))
        return "\n".join(lines)

    def __bool__(self):
        return self.passed


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    passes: int = 0
    failures: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    wall_time: Optional[float] = None
    notes: list = field(default_factory=list)
    records: list = field(default_factory=list, repr=False)  # every case, kept in memory only

    def record(self, case: int, ok: bool, witness=None):
        self.cases += 1
        w = jsonable(witness)
        self.records.append(dict(w, case=case, ok=ok) if isinstance(w, dict) else {"case": case, "ok": ok, "witness": w})
        if ok:
            self.passes += 1
        else:
            self.failures.append({"case": case, "witness": jsonable(witness)})

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False):
        out = {"schema": SCHEMA, "suite": self.suite, "params": jsonable(self.params),
               "cases": self.cases, "passes": self.passes, "failures": self.failures,
               "notes": jsonable(self.notes)}
        if timing and self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out

    def render(self) -> str:
        head = f"{self.suite}: {self.passes}/{self.cases} pass"
        if self.wall_time is not None:
            head += f" ({self.wall_time:.2f}s)"
        lines = [head] + [f"  note: {n}" for n in self.notes]
        for f in self.failures:
            lines.append("  FAIL case %d: %s" % (f["case"], json.dumps(f["witness"], sort_keys=True)))
        return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2)
