"""Sequential convergence methods and checkers for their traits.

A method maps (some) sequences to generalized limits. The symbolic methods
(:class:`Lim`, :class:`Cesaro`, :class:`Statistical`) decide membership and
compute limits exactly from the closed-form value distribution of a
sequence. :class:`Matrix` methods are evaluated numerically from row-finite
summability rows and never claim exactness, except that Cesaro-shaped rows
are routed to the exact path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from .rational import Q, format_rat
from .sequences import (
    AP,
    AffineMap,
    IndexFamily,
    SeqSpec,
    UnsupportedSequence,
    normalize,
    subsequence,
    transform,
    translate,
)

DEFAULT_N_MAX = 10**5
DEFAULT_TOL = Fraction(1, 10**9)


def default_tolerance() -> Fraction:
    """``GCONVERGE_TOLERANCE`` if set (as ``p/q`` or decimal), else 1e-9."""
    raw = os.environ.get("GCONVERGE_TOLERANCE")
    return Q(raw) if raw else DEFAULT_TOL


# -- limit results --------------------------------------------------------

@dataclass(frozen=True)
class Converges:
    value: Fraction
    exact: bool = True

    def to_json(self):
        return {"kind": "converges", "value": format_rat(self.value), "exact": self.exact}

    def __str__(self):
        return format_rat(self.value) + ("" if self.exact else " (numeric)")


@dataclass(frozen=True)
class Diverges:
    def to_json(self):
        return {"kind": "diverges"}

    def __str__(self):
        return "diverges"


@dataclass(frozen=True)
class Unknown:
    estimate: Fraction
    spread: Fraction

    def to_json(self):
        return {"kind": "unknown", "estimate": format_rat(self.estimate), "spread": format_rat(self.spread)}

    def __str__(self):
        return f"~{float(self.estimate):.12g} (spread {float(self.spread):.3g})"


DIVERGES = Diverges()
LimitResult = object  # Converges | Diverges | Unknown


# -- summability rows -----------------------------------------------------

class Rows:
    """Row-finite summability matrix: ``row(n)`` lists the nonzero ``(k, a_nk)``."""

    last_row: Optional[int] = None

    def row(self, n: int) -> list:
        raise NotImplementedError

    def checked_row(self, n: int) -> list:
        r = self.row(n)
        if not isinstance(r, (list, tuple)):
            raise ValueError(f"row {n} is not a finite list; matrix is not row-finite")
        return [(int(k), Q(a)) for k, a in r]

    def row_arrays(self, n: int):
        r = self.checked_row(n)
        ks = np.array([k for k, _ in r], dtype=np.int64)
        ws = np.array([float(a) for _, a in r])
        return ks, ws


@dataclass(frozen=True)
class CesaroRows(Rows):
    """a_nk = 1/n for k <= n."""

    def row(self, n):
        w = Fraction(1, n)
        return [(k, w) for k in range(1, n + 1)]

    def row_arrays(self, n):
        return np.arange(1, n + 1), np.full(n, 1.0 / n)

    def __str__(self):
        return "cesaro"


@dataclass(frozen=True)
class BandRows(Rows):
    """Toeplitz band: a_{n, n+offset} = coeff (dropped when n + offset < 1)."""

    coeffs: tuple  # ((offset, coeff), ...)

    def row(self, n):
        return [(n + off, Q(c)) for off, c in self.coeffs if n + off >= 1 and Q(c) != 0]

    def __str__(self):
        return "band(" + ", ".join(f"{o}:{format_rat(Q(c))}" for o, c in self.coeffs) + ")"


@dataclass(frozen=True)
class FixedRows(Rows):
    """Every row is the same finitely supported vector: a_nk = coeffs[k]."""

    coeffs: tuple  # ((k, coeff), ...)

    def row(self, n):
        return [(k, Q(c)) for k, c in self.coeffs if Q(c) != 0]

    def __str__(self):
        return "fixed(" + ", ".join(f"{k}:{format_rat(Q(c))}" for k, c in self.coeffs) + ")"


@dataclass(frozen=True)
class ExplicitRows(Rows):
    """Finitely many rows, as loaded from a matrix file; missing rows are zero."""

    table: tuple  # ((n, ((k, a), ...)), ...)

    @property
    def last_row(self):
        return max((n for n, _ in self.table), default=0)

    def row(self, n):
        for m, entries in self.table:
            if m == n:
                return list(entries)
        return []

    def __str__(self):
        return f"explicit({len(self.table)} rows)"


@dataclass(frozen=True)
class FunctionRows(Rows):
    fn: Callable = field(compare=False)
    name: str = "function"

    def row(self, n):
        return self.fn(n)

    def __str__(self):
        return self.name


def parse_rows(text: str) -> ExplicitRows:
    """Parse ``n: k1=p/q, k2=p/q, ...`` lines (``#`` starts a comment)."""
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'n: k=a, ...'")
        try:
            n = int(head)
        except ValueError:
            raise ValueError(f"line {lineno}: bad row index {head.strip()!r}") from None
        if n < 1 or n in table:
            raise ValueError(f"line {lineno}: row index {n} invalid or repeated")
        entries = []
        for item in filter(None, (p.strip() for p in body.split(","))):
            k, eq, a = item.partition("=")
            if not eq:
                raise ValueError(f"line {lineno}: expected k=a, got {item!r}")
            entries.append((int(k), Q(a.strip())))
        table[n] = tuple(entries)
    return ExplicitRows(tuple(sorted(table.items())))


def load_rows(spec: str) -> Rows:
    """``cesaro`` or a path to a matrix file."""
    if spec == "cesaro":
        return CesaroRows()
    with open(spec, encoding="utf-8") as fh:
        return parse_rows(fh.read())


# -- methods --------------------------------------------------------------

class MethodSpec:
    """Common interface; trait flags are the verified values on the standard corpus."""

    name = "?"
    regular: Optional[bool] = None
    subsequential: Optional[bool] = None
    preserves_subsequences: Optional[bool] = None
    translate_regular: Optional[bool] = None
    symbolic = True

    def in_domain(self, seq: SeqSpec) -> bool:
        raise NotImplementedError

    def limit(self, seq: SeqSpec):
        raise NotImplementedError

    @property
    def factor(self) -> "MethodSpec":
        return self

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Lim(MethodSpec):
    name = "lim"
    regular = True
    subsequential = True
    preserves_subsequences = True
    translate_regular = True

    def in_domain(self, seq):
        return len(normalize(seq).recurrent_values()) == 1

    def limit(self, seq):
        vals = normalize(seq).recurrent_values()
        if len(vals) == 1:
            return Converges(next(iter(vals)))
        return DIVERGES


@dataclass(frozen=True)
class Cesaro(MethodSpec):
    name = "cesaro"
    regular = True
    subsequential = False
    preserves_subsequences = False
    translate_regular = True

    def in_domain(self, seq):
        normalize(seq)  # every catalog shape has a closed-form mean
        return True

    def limit(self, seq):
        dens = normalize(seq).value_densities()
        return Converges(sum((v * d for v, d in dens.items()), Fraction(0)))


@dataclass(frozen=True)
class Statistical(MethodSpec):
    name = "stat"
    regular = True
    subsequential = True
    preserves_subsequences = False
    translate_regular = True

    def in_domain(self, seq):
        return self._value(seq) is not None

    def limit(self, seq):
        v = self._value(seq)
        return DIVERGES if v is None else Converges(v)

    @staticmethod
    def _value(seq):
        # finitely many values: st-lim L exists iff {n : x_n = L} has density 1
        for v, d in normalize(seq).value_densities().items():
            if d == 1:
                return v
        return None


@dataclass(frozen=True)
class Matrix(MethodSpec):
    rows: Rows = CesaroRows()
    n_max: int = DEFAULT_N_MAX
    tol: Fraction = DEFAULT_TOL

    symbolic = False

    def __post_init__(self):
        if self.n_max < 100:
            raise ValueError("n_max must be at least 100")
        object.__setattr__(self, "tol", Q(self.tol))
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")

    @property
    def name(self):
        return f"matrix:{self.rows}"

    @property
    def routes_exact(self) -> bool:
        return isinstance(self.rows, CesaroRows)

    def in_domain(self, seq):
        """Exact for Cesaro rows; otherwise a numeric Cauchy test (evidence, not proof)."""
        if self.routes_exact:
            return True
        res = self._numeric(seq)
        return res.spread <= self.tol

    def limit(self, seq):
        if self.routes_exact:
            return Cesaro().limit(seq)
        return self._numeric(seq)

    def _numeric(self, seq) -> Unknown:
        top = self.n_max if self.rows.last_row is None else min(self.n_max, self.rows.last_row)
        top = max(top, 1)
        sample = sorted({max(1, top // 2), max(1, 3 * top // 4), max(1, top - 1), top})
        rows = [self.rows.row_arrays(n) for n in sample]
        kmax = max((int(ks.max()) for ks, _ in rows if ks.size), default=1)
        x = normalize(seq).terms(kmax)
        vals = [float(np.dot(ws, x[ks - 1])) if ks.size else 0.0 for ks, ws in rows]
        est = vals[-1]
        spread = max(abs(v - est) for v in vals)
        return Unknown(Fraction(est), Fraction(spread))


@dataclass(frozen=True)
class Product(MethodSpec):
    """Coordinatewise application of ``base`` on countable products."""

    base: MethodSpec = Lim()

    @property
    def name(self):
        return f"prod({self.base.name})"

    @property
    def factor(self):
        return self.base

    regular = property(lambda self: self.base.regular)
    subsequential = property(lambda self: self.base.subsequential)
    preserves_subsequences = property(lambda self: self.base.preserves_subsequences)
    translate_regular = property(lambda self: self.base.translate_regular)

    def in_domain(self, prodseq, depth: int = 1) -> bool:
        return all(self.base.in_domain(prodseq.coordinate(i)) for i in range(1, depth + 1))

    def limit(self, prodseq, depth: int = 1) -> list:
        return [self.base.limit(prodseq.coordinate(i)) for i in range(1, depth + 1)]


LIM = Lim()
CESARO = Cesaro()
STAT = Statistical()
SYMBOLIC_METHODS = (LIM, CESARO, STAT)


def in_domain(m: MethodSpec, s) -> bool:
    return m.in_domain(s)


def g_limit(m: MethodSpec, s):
    return m.limit(s)


def parse_method(text: str, *, n_max: int = DEFAULT_N_MAX, tol=None) -> MethodSpec:
    """``lim``, ``cesaro``, ``stat``, ``matrix:<file|cesaro>``, ``prod(<method>)``."""
    t = text.strip()
    if t in ("lim", "limit"):
        return LIM
    if t == "cesaro":
        return CESARO
    if t in ("stat", "statistical"):
        return STAT
    if t.startswith("matrix:"):
        return Matrix(load_rows(t[len("matrix:"):]), n_max, default_tolerance() if tol is None else tol)
    if t.startswith("prod(") and t.endswith(")"):
        return Product(parse_method(t[5:-1], n_max=n_max, tol=tol))
    raise ValueError(f"unknown method {text!r}; expected lim, cesaro, stat, matrix:<file>, prod(<method>)")


# -- trait verdicts -------------------------------------------------------

@dataclass
class TraitVerdict:
    trait: str
    holds: bool
    witness: Optional[dict] = None
    scope: str = "corpus-checked"
    checked: int = 0
    note: str = ""

    def __post_init__(self):
        if not self.holds and not self.witness:
            raise ValueError("a failing verdict must carry a counterexample")

    def to_json(self):
        return {
            "trait": self.trait,
            "holds": self.holds,
            "scope": self.scope,
            "checked": self.checked,
            "note": self.note,
            "witness": self.witness,
        }

    def __bool__(self):
        return self.holds


def _lim_json(r):
    return r.to_json()


def _same(a, b) -> bool:
    """Exact agreement of two limit results; numeric results never count as equal."""
    return isinstance(a, Converges) and isinstance(b, Converges) and a.value == b.value


def check_matrix_regular(rows: Rows, *, n_max: int = DEFAULT_N_MAX, tol=None) -> TraitVerdict:
    """Silverman-Toeplitz conditions.

    (i) sup_n sum_k |a_nk| < inf, (ii) a_nk -> 0 for every column k,
    (iii) sum_k a_nk -> 1. Cesaro, band and fixed-vector rows are decided
    exactly from their closed forms; other rows get numeric bound checks.
    """
    tol = default_tolerance() if tol is None else Q(tol)
    if isinstance(rows, CesaroRows):
        conds = {"i": True, "ii": True, "iii": True}
        detail = {"row_abs_sum": "1", "column_entry": "1/n", "row_sum": "1"}
        return _st_verdict(conds, detail, "proved-exactly")
    if isinstance(rows, BandRows):
        total = sum((Q(c) for _, c in rows.coeffs), Fraction(0))
        conds = {"i": True, "ii": True, "iii": total == 1}
        detail = {"row_abs_sum": format_rat(sum((abs(Q(c)) for _, c in rows.coeffs), Fraction(0))),
                  "row_sum_eventually": format_rat(total)}
        return _st_verdict(conds, detail, "proved-exactly")
    if isinstance(rows, FixedRows):
        support = [(k, Q(c)) for k, c in rows.coeffs if Q(c) != 0]
        total = sum((c for _, c in support), Fraction(0))
        conds = {"i": True, "ii": not support, "iii": total == 1}
        detail = {"row_sum": format_rat(total)}
        if support:
            k, c = min(support)
            detail["column"] = k
            detail["column_value"] = format_rat(c)
        return _st_verdict(conds, detail, "proved-exactly")

    top = n_max if rows.last_row is None else min(n_max, rows.last_row)
    sample = sorted({max(1, top // 4), max(1, top // 2), top})
    abs_sums, sums, cols = [], [], {}
    for n in sample:
        r = rows.checked_row(n)
        abs_sums.append(sum(abs(a) for _, a in r))
        sums.append(sum((a for _, a in r), Fraction(0)))
        for k, a in r:
            if k <= 5:
                cols.setdefault(k, {})[n] = a
    loose = Fraction(1, 1000)
    conds = {
        "i": max(abs_sums) <= 10**6,
        "ii": all(abs(v.get(top, 0)) <= loose for v in cols.values()),
        "iii": abs(sums[-1] - 1) <= loose,
    }
    detail = {"rows_sampled": sample, "max_abs_row_sum": format_rat(max(abs_sums)),
              "last_row_sum": format_rat(sums[-1])}
    return _st_verdict(conds, detail, f"numeric (N_max={top})")


def _st_verdict(conds, detail, scope) -> TraitVerdict:
    failing = [c for c in ("i", "ii", "iii") if not conds[c]]
    witness = dict(detail, failing=failing) if failing else None
    return TraitVerdict("silverman-toeplitz", not failing, witness, scope, note=str(detail) if not failing else "")


def check_regular_empirical(m: MethodSpec, corpus: Iterable[SeqSpec]) -> TraitVerdict:
    n = 0
    for s in corpus:
        ref = LIM.limit(s)
        if not isinstance(ref, Converges):
            raise ValueError(f"corpus element {s} is not convergent")
        got = m.limit(s)
        n += 1
        ok = _same(got, ref)
        if not ok and isinstance(got, Unknown):
            ok = abs(got.estimate - ref.value) <= getattr(m, "tol", DEFAULT_TOL)
        if not ok:
            return TraitVerdict("regular", False, {"sequence": str(s), "lim": _lim_json(ref),
                                                   "method": _lim_json(got)}, checked=n)
    return TraitVerdict("regular", True, checked=n)


def check_preserves_subsequences(m: MethodSpec, corpus: Iterable[SeqSpec],
                                 families: Iterable[IndexFamily]) -> TraitVerdict:
    families = list(families)
    if any(not f.is_infinite for f in families):
        raise ValueError("index families must be infinite")
    checked = skipped = 0
    for s in corpus:
        base = m.limit(s)
        if not isinstance(base, Converges):
            continue
        for fam in families:
            try:
                sub = subsequence(s, fam)
            except UnsupportedSequence:
                skipped += 1
                continue
            checked += 1
            got = m.limit(sub)
            if not _same(got, base):
                return TraitVerdict(
                    "preserves-subsequences", False,
                    {"sequence": str(s), "family": str(fam), "limit": _lim_json(base),
                     "subsequence": str(sub), "subsequence_limit": _lim_json(got)},
                    checked=checked, note=f"{skipped} extractions outside the catalog skipped")
    scope = "proved-exactly" if isinstance(m, Lim) else "corpus-checked"
    return TraitVerdict("preserves-subsequences", True, scope=scope, checked=checked,
                        note=f"{skipped} extractions outside the catalog skipped")


def _subsequence_witness(s: SeqSpec, target: Fraction) -> Optional[AP]:
    """An arithmetic progression along which ``s`` is eventually constant at ``target``."""
    s = normalize(s)
    h = s.horizon + 1
    for d in range(1, 65):
        for a in range(h, h + 2 * d + 8):
            fam = AP(a, d)
            try:
                sub = subsequence(s, fam)
            except UnsupportedSequence:
                continue
            if sub.recurrent_values() == frozenset({target}):
                return fam
    return None


def check_subsequential(m: MethodSpec, s: SeqSpec) -> TraitVerdict:
    """Look for a subsequence converging ordinarily to the method's limit.

    Catalog sequences take finitely many values, so such a subsequence exists
    iff the limit is a value taken infinitely often.
    """
    if not m.in_domain(s):
        raise ValueError(f"{s} is not in the domain of {m}")
    res = m.limit(s)
    if not isinstance(res, Converges):
        raise ValueError("numeric limits cannot be checked for subsequentiality")
    l = res.value
    recurrent = normalize(s).recurrent_values()
    if l not in recurrent:
        return TraitVerdict(
            "subsequential", False,
            {"sequence": str(s), "limit": format_rat(l),
             "recurrent_values": sorted(format_rat(v) for v in recurrent),
             "reason": "every convergent subsequence tends to a recurrent value"},
            scope="proved-exactly")
    fam = AP(1, 1) if isinstance(m, Lim) else _subsequence_witness(s, l)
    if fam is None:
        raise RuntimeError(f"no AP witness found for {s}")
    sub = subsequence(s, fam)
    assert LIM.limit(sub) == Converges(l)
    return TraitVerdict("subsequential", True, scope="proved-exactly", checked=1,
                        note=f"witness along {fam}: {sub}")


def check_translate_regular(m: MethodSpec, corpus: Iterable[SeqSpec], shifts: Iterable) -> TraitVerdict:
    shifts = [Q(g) for g in shifts]
    n = 0
    for s in corpus:
        base = m.limit(s)
        for g in shifts:
            got = m.limit(transform(s, translate(g)))
            n += 1
            if isinstance(base, Converges):
                ok = _same(got, Converges(base.value + g))
            else:
                ok = isinstance(got, Diverges) == isinstance(base, Diverges) and not isinstance(got, Converges)
            if not ok:
                return TraitVerdict("translate-regular", False,
                                    {"sequence": str(s), "shift": format_rat(g), "limit": _lim_json(base),
                                     "shifted_limit": _lim_json(got)}, checked=n)
    return TraitVerdict("translate-regular", True, checked=n)


def check_g_continuity(m: MethodSpec, f: AffineMap, corpus: Iterable[SeqSpec]) -> TraitVerdict:
    """``G(f(x)) = f(G(x))`` on every in-domain corpus element."""
    n = 0
    for s in corpus:
        base = m.limit(s)
        if not isinstance(base, Converges):
            continue
        got = m.limit(transform(s, f))
        n += 1
        if not _same(got, Converges(f(base.value))):
            return TraitVerdict("g-continuous", False,
                                {"map": str(f), "sequence": str(s), "limit": _lim_json(base),
                                 "image_limit": _lim_json(got)}, checked=n)
    return TraitVerdict("g-continuous", True, checked=n, note=str(f))
