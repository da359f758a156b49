"""Recursive-descent parsers for set expressions and sequence, box and point literals.

Set expressions::

    expr  := inter (('u' | '\\') inter)*
    inter := sum ('n' sum)*
    sum   := unary ('+' unary)*
    unary := ('compl' | 'neg' | '-') unary | atom
    atom  := interval | '{' num (',' num)* '}' | 'R' | 'empty' | num | '(' expr ')'

A bare number is a singleton, so ``g + A`` is a translate. Rationals are
``p/q``, integers or decimals; interval ends may be ``inf`` or ``-inf``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import realsets as rs
from .errors import PreconditionError
from .rational import INF, NEG_INF, parse_rat
from .realsets import RSet

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+/\d+|\d*\.\d+|\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<p>[\[\](){},;=+\-\\/]))")


class ParseError(PreconditionError):
    def __init__(self, text: str, pos: int, expected: str, found: str):
        self.text, self.pos, self.expected, self.found = text, pos, expected, found
        super().__init__(f"parse error at position {pos}: expected {expected}, found {found}\n"
                         f"  {text}\n  {' ' * pos}^")


@dataclass
class Tok:
    kind: str
    value: str
    pos: int

    def __str__(self):
        return "end of input" if self.kind == "end" else repr(self.value)


def tokenize(text: str) -> list:
    out, i = [], 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            out.append(Tok("end", "", i))
            return out
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(text, i, "a token", repr(text[i]))
        kind = m.lastgroup
        out.append(Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str) -> bool:
        return self.tok.kind != "end" and self.tok.value == value

    def fail(self, expected: str):
        raise ParseError(self.text, self.tok.pos, expected, str(self.tok))

    def eat(self, value: str) -> Tok:
        if not self.at(value):
            self.fail(repr(value))
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        if self.tok.kind != "id":
            self.fail("a name")
        t = self.tok
        self.i += 1
        return t.value

    def done(self):
        if self.tok.kind != "end":
            self.fail("end of input")

    # -- numbers
    def number(self) -> Fraction:
        neg = False
        while self.at("-"):
            self.i += 1
            neg = not neg
        if self.tok.kind != "num":
            self.fail("a rational")
        t = self.tok
        self.i += 1
        try:
            v = parse_rat(t.value)
        except ValueError:
            raise ParseError(self.text, t.pos, "a well-formed rational", repr(t.value)) from None
        return -v if neg else v

    def bound(self):
        start = self.i
        neg = False
        while self.at("-"):
            self.i += 1
            neg = not neg
        if self.at("inf"):
            self.i += 1
            return NEG_INF if neg else INF
        self.i = start
        return self.number()

    def _starts_number(self) -> bool:
        j = self.i
        while self.toks[j].kind == "p" and self.toks[j].value == "-":
            j += 1
        return self.toks[j].kind == "num" or self.toks[j].value == "inf"

    # -- sets
    def set_expr(self) -> RSet:
        left = self.inter()
        while self.at("u") or self.at("\\"):
            op = self.tok.value
            self.i += 1
            right = self.inter()
            left = left | right if op == "u" else rs.difference(left, right)
        return left

    def inter(self) -> RSet:
        left = self.sum_()
        while self.at("n"):
            self.i += 1
            left = left & self.sum_()
        return left

    def sum_(self) -> RSet:
        left = self.unary()
        while self.at("+"):
            self.i += 1
            left = rs.minkowski_sum(left, self.unary())
        return left

    def unary(self) -> RSet:
        if self.at("compl"):
            self.i += 1
            return rs.complement(self.unary())
        if self.at("neg") or self.at("-"):
            self.i += 1
            return rs.negate(self.unary())
        return self.atom()

    def _interval_ahead(self) -> bool:
        j = self.i + 1
        while self.toks[j].kind == "p" and self.toks[j].value == "-":
            j += 1
        if not (self.toks[j].kind == "num" or self.toks[j].value == "inf"):
            return False
        return self.toks[j + 1].value == ","

    def atom(self) -> RSet:
        t = self.tok
        if t.kind == "num":
            return RSet.point(self.number())
        if t.kind == "id":
            if t.value == "R":
                self.i += 1
                return RSet.reals()
            if t.value == "empty":
                self.i += 1
                return RSet.empty()
            self.fail("a set")
        if t.value == "[" or (t.value == "(" and self._interval_ahead()):
            return self.interval()
        if t.value == "(":
            self.i += 1
            inner = self.set_expr()
            self.eat(")")
            return inner
        if t.value == "{":
            self.i += 1
            pts = [self.number()]
            while self.at(","):
                self.i += 1
                pts.append(self.number())
            self.eat("}")
            return RSet.point(*pts)
        self.fail("a set")

    def interval(self) -> RSet:
        open_tok = self.tok
        lo_closed = open_tok.value == "["
        self.i += 1
        lo = self.bound()
        self.eat(",")
        hi = self.bound()
        if not (self.at("]") or self.at(")")):
            self.fail("']' or ')'")
        hi_closed = self.tok.value == "]"
        self.i += 1
        if lo > hi:
            raise ParseError(self.text, open_tok.pos, "lower end <= upper end", f"{lo} > {hi}")
        if (lo_closed and lo == NEG_INF) or (hi_closed and hi == INF):
            raise ParseError(self.text, open_tok.pos, "open ends at infinity", "a closed infinite end")
        return rs.interval(lo, hi, lo_closed, hi_closed)

    # -- sequences
    def rat_list(self) -> list:
        self.eat("[")
        out = []
        if not self.at("]"):
            out.append(self.number())
            while self.at(","):
                self.i += 1
                out.append(self.number())
        self.eat("]")
        return out

    def _fields(self, parsers: dict) -> dict:
        self.eat("(")
        got = {}
        while not self.at(")"):
            name = self.ident()
            if name not in parsers:
                self.i -= 1
                self.fail("one of " + ", ".join(parsers))
            self.eat("=")
            got[name] = parsers[name]()
            if not self.at(")"):
                self.eat(";")
        self.eat(")")
        return got

    def family(self):
        from .sequences import AP, Finite, PowersOfTwo, Squares

        name = self.ident()
        if name == "squares":
            return Squares()
        if name in ("pow2", "powers_of_two"):
            return PowersOfTwo()
        if name == "ap":
            self.eat("(")
            a = self.number()
            self.eat(",")
            d = self.number()
            self.eat(")")
            return AP(int(a), int(d))
        if name == "finite":
            self.eat("(")
            members = [int(self.number())]
            while self.at(","):
                self.i += 1
                members.append(int(self.number()))
            self.eat(")")
            return Finite(frozenset(members))
        self.i -= 1
        self.fail("squares, pow2, ap(a,d) or finite(...)")

    def seq(self):
        from .sequences import SpikeMix, Tabulated, const, per

        name = self.ident()
        if name == "const":
            f = self._fields({"prefix": self.rat_list, "tail": self.number})
            if "tail" not in f:
                self.fail("tail=")
            return const(f["tail"], f.get("prefix", ()))
        if name == "per":
            f = self._fields({"prefix": self.rat_list, "cycle": self.rat_list})
            if not f.get("cycle"):
                self.fail("a nonempty cycle=[...]")
            return per(f.get("prefix", ()), f["cycle"])
        if name == "spike":
            f = self._fields({"base": self.number, "spike": self.number, "where": self.family})
            if set(f) != {"base", "spike", "where"}:
                self.fail("base=, spike= and where=")
            return SpikeMix(f["base"], f["spike"], f["where"])
        if name == "tab":
            f = self._fields({"values": self.rat_list, "beyond": self.seq})
            if "beyond" not in f:
                self.fail("beyond=")
            return Tabulated(tuple(f.get("values", ())), f["beyond"])
        self.i -= 1
        self.fail("const, per, spike or tab")

    # -- product literals
    def rule(self):
        from .products import Constant, ShiftedInterval, Translated

        if self.at("shifted"):
            self.i += 1
            self.eat("(")
            self.eat("r")
            self.eat("=")
            r = self.number()
            closed = False
            if self.at(";"):
                self.i += 1
                self.eat("closed")
                closed = True
            self.eat(")")
            return ShiftedInterval(r, closed, closed)
        if self.at("i") and self.peek().value == "+":
            self.i += 2
            base = self.set_expr()
            if base.is_empty or base.is_reals:
                return Constant(base)
            return Translated(base)
        return Constant(self.set_expr())

    def box(self):
        from .products import DepthBox

        self.eat("box")
        self.eat("[")
        self.eat("d")
        self.eat("=")
        d_tok = self.tok
        d = self.number()
        self.eat("]")
        self.eat("{")
        factors = []
        tail = None
        while True:
            if self.at("tail") and self.peek().value == "=":
                self.i += 2
                tail = self.rule()
            else:
                factors.append(self.set_expr())
            if self.at("}"):
                break
            self.eat(";")
        self.eat("}")
        if d.denominator != 1 or d < 1 or len(factors) != d:
            raise ParseError(self.text, d_tok.pos, f"{len(factors)} = d >= 1", str(d))
        from .products import Constant

        return DepthBox(tuple(factors), tail if tail is not None else Constant(RSet.reals()))

    def point(self):
        from .products import PConst, PExplicit, PIndex, PRecip

        if self.at("i"):
            self.i += 1
            return PIndex()
        if self.tok.value == "1" and self.peek().value == "/" and self.peek(2).value == "i":
            self.i += 3
            return PRecip()
        if self.at("["):
            self.i += 1
            vals = [self.number()]
            while self.at(","):
                self.i += 1
                vals.append(self.number())
            beyond = PConst()
            if self.at(";"):
                self.i += 1
                self.eat("then")
                beyond = self.point()
            self.eat("]")
            return PExplicit(tuple(vals), beyond)
        return PConst(self.number())


def _run(text: str, method: str):
    p = Parser(text)
    out = getattr(p, method)()
    p.done()
    return out


def parse_set(text: str) -> RSet:
    return _run(text, "set_expr")


def parse_seq(text: str):
    return _run(text, "seq")


def parse_box(text: str):
    return _run(text, "box")


def parse_family(text: str):
    """``family shifted(r=1/4)``, ``shifted(r=1/4)``, ``i + SET`` or a constant set."""
    text = text.strip()
    if text.startswith("family"):
        text = text[len("family"):]
    return _run(text, "rule")


def parse_point(text: str):
    return _run(text, "point")
