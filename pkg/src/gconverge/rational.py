"""Exact rational scalars and the ``p/q`` text form used in reports and literals."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

Rat = Fraction
Bound = Union[Fraction, float]  # float only for +/-inf

INF = math.inf
NEG_INF = -math.inf

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_DEC_RE = re.compile(r"^\s*[+-]?\d*\.\d+\s*$")


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: every scalar in the library is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def parse_rat(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if m:
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    if _DEC_RE.match(text):
        return Fraction(text.strip())
    raise ValueError(f"malformed rational {text!r}")


def format_rat(x: Bound) -> str:
    if isinstance(x, float):
        if x == INF:
            return "inf"
        if x == NEG_INF:
            return "-inf"
        raise ValueError(f"finite floats are not exact rationals: {x!r}")
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_finite(x: Bound) -> bool:
    return not (isinstance(x, float) and math.isinf(x))
