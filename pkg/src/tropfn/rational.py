"""Exact rational helpers shared across the package.

Every quantity in this library is an arbitrary-precision rational
(``fractions.Fraction``).  Floats are refused at each entry point so that no
inexact value can leak into a computation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

Rational = Fraction


def as_fraction(value: Fraction | int | str) -> Fraction:
    """Coerce an int, Fraction or ``'p/q'`` string to an exact rational.

    Floats (and float-looking strings such as ``'0.5'`` or ``'1e3'``) raise
    ``TypeError``/``ValueError``.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        if any(ch in value for ch in ".eE"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fmt(q: Fraction) -> str:
    """Render a rational in lowest terms as ``'p'`` or ``'p/q'``."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_integral(q: Fraction) -> bool:
    return q.denominator == 1


def lcm_denominators(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators of ``values`` (at least 1)."""
    out = 1
    for q in values:
        out = math.lcm(out, q.denominator)
    return out
