"""Exact algebra of univariate piecewise-linear functions with rational slopes.

A function is kept in canonical form: strictly increasing rational
breakpoints, one rational slope per piece (``k`` breakpoints give ``k + 1``
pieces, adjacent slopes always distinct), and a single anchor value fixing
the additive level.  Continuity is structural -- values are propagated from
the anchor by slope times length -- and the breakpoints of the canonical form
are exactly the points where the function is not differentiable (its tropical
roots), so structural equality coincides with pointwise equality.

All arithmetic uses ``fractions.Fraction``; floats never enter.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .rational import as_fraction, fmt, is_integral

__all__ = [
    "PwlFunction",
    "MonomialForm",
    "FunctionTag",
    "FunctionClass",
    "Block",
    "Interval",
    "normalize",
    "from_monomials",
    "identity",
    "constant",
    "linear",
    "negate",
    "tropical_min",
    "tropical_max",
    "add",
    "sub",
    "compose",
    "iterate",
    "inverse",
    "roots",
    "classify",
    "blocks",
    "block_count",
    "equals",
    "equals_on_interval",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# intervals

@dataclass(frozen=True)
class Interval:
    """A closed interval with optionally unbounded ends (``None`` = infinite)."""

    lower: Fraction | None
    upper: Fraction | None

    def __post_init__(self) -> None:
        lo = None if self.lower is None else as_fraction(self.lower)
        hi = None if self.upper is None else as_fraction(self.upper)
        if lo is not None and hi is not None and lo > hi:
            raise ValueError("empty interval: lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def whole(cls) -> "Interval":
        return cls(None, None)

    @classmethod
    def at_most(cls, x) -> "Interval":
        return cls(None, x)

    @classmethod
    def at_least(cls, x) -> "Interval":
        return cls(x, None)

    @classmethod
    def closed(cls, a, b) -> "Interval":
        return cls(a, b)

    def contains(self, x: Fraction) -> bool:
        if self.lower is not None and x < self.lower:
            return False
        if self.upper is not None and x > self.upper:
            return False
        return True

    def __repr__(self) -> str:
        lo = "-inf" if self.lower is None else fmt(self.lower)
        hi = "inf" if self.upper is None else fmt(self.upper)
        return f"Interval[{lo}, {hi}]"


# ---------------------------------------------------------------------------
# the function type

@dataclass(frozen=True)
class PwlFunction:
    """Canonical continuous piecewise-linear function.

    ``slopes[i]`` is the slope on ``[breakpoints[i-1], breakpoints[i]]`` with
    the conventions ``breakpoints[-1] = -oo`` and ``breakpoints[k] = +oo``.
    The anchor is ``(breakpoints[0], value)`` when there is a breakpoint and
    ``(0, value)`` otherwise.
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    anchor: tuple[Fraction, Fraction]

    def __post_init__(self) -> None:
        bps = tuple(as_fraction(b) for b in self.breakpoints)
        slopes = tuple(as_fraction(s) for s in self.slopes)
        ax, av = self.anchor
        anchor = (as_fraction(ax), as_fraction(av))
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "slopes", slopes)
        object.__setattr__(self, "anchor", anchor)
        if len(slopes) != len(bps) + 1:
            raise ValueError(
                f"need one slope per piece: {len(bps)} breakpoints require "
                f"{len(bps) + 1} slopes, got {len(slopes)}"
            )
        for a, b in zip(bps, bps[1:]):
            if a >= b:
                raise ValueError("breakpoints must be strictly increasing")
        for a, b in zip(slopes, slopes[1:]):
            if a == b:
                raise ValueError("not canonical: adjacent pieces share a slope")
        expected_x = bps[0] if bps else _ZERO
        if anchor[0] != expected_x:
            raise ValueError(
                "anchor must sit at the first breakpoint (or 0 for linear functions)"
            )

    @classmethod
    def _raw(cls, breakpoints: tuple[Fraction, ...], slopes: tuple[Fraction, ...],
             anchor: tuple[Fraction, Fraction]) -> "PwlFunction":
        """Trusted constructor for data already known to be canonical."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "breakpoints", breakpoints)
        object.__setattr__(obj, "slopes", slopes)
        object.__setattr__(obj, "anchor", anchor)
        return obj

    # -- evaluation ---------------------------------------------------------

    @cached_property
    def _breakpoint_values(self) -> tuple[Fraction, ...]:
        if not self.breakpoints:
            return ()
        vals = [self.anchor[1]]
        for i in range(1, len(self.breakpoints)):
            step = self.breakpoints[i] - self.breakpoints[i - 1]
            vals.append(vals[-1] + self.slopes[i] * step)
        return tuple(vals)

    def value_at(self, x) -> Fraction:
        """Exact value of the function at ``x``."""
        if type(x) is not Fraction:
            x = as_fraction(x)
        bps = self.breakpoints
        if not bps:
            return self.anchor[1] + self.slopes[0] * (x - self.anchor[0])
        vals = self._breakpoint_values
        i = bisect_right(bps, x)
        if i == 0:
            return vals[0] + self.slopes[0] * (x - bps[0])
        return vals[i - 1] + self.slopes[i] * (x - bps[i - 1])

    __call__ = value_at

    # -- structure ----------------------------------------------------------

    @property
    def roots(self) -> tuple[Fraction, ...]:
        """Tropical roots: the points where the function is not differentiable."""
        return self.breakpoints

    @property
    def is_linear(self) -> bool:
        return not self.breakpoints

    def pieces(self) -> Iterator[tuple[Fraction | None, Fraction | None, Fraction, Fraction, Fraction]]:
        """Yield ``(lower, upper, slope, ref_x, ref_value)`` per linear piece.

        ``None`` bounds are unbounded; ``ref_x`` is a point of the closed piece
        with known value ``ref_value``.
        """
        bps = self.breakpoints
        if not bps:
            yield (None, None, self.slopes[0], self.anchor[0], self.anchor[1])
            return
        vals = self._breakpoint_values
        yield (None, bps[0], self.slopes[0], bps[0], vals[0])
        for j in range(len(bps) - 1):
            yield (bps[j], bps[j + 1], self.slopes[j + 1], bps[j], vals[j])
        yield (bps[-1], None, self.slopes[-1], bps[-1], vals[-1])

    def __repr__(self) -> str:
        bps = ", ".join(fmt(b) for b in self.breakpoints)
        ss = ", ".join(fmt(s) for s in self.slopes)
        ax, av = self.anchor
        return f"PwlFunction([{bps}], slopes=[{ss}], anchor=({fmt(ax)}, {fmt(av)}))"


# ---------------------------------------------------------------------------
# constructors

def _raw_value_at(bps: Sequence[Fraction], slopes: Sequence[Fraction],
                  anchor_x: Fraction, anchor_v: Fraction, x: Fraction) -> Fraction:
    """Evaluate raw (possibly non-canonical) data at ``x``."""
    if not bps:
        return anchor_v + slopes[0] * (x - anchor_x)
    # values at breakpoints, propagated from the anchor wherever it sits
    i = bisect_right(bps, anchor_x)
    vals: list[Fraction | None] = [None] * len(bps)
    if i == 0:
        vals[0] = anchor_v + slopes[0] * (bps[0] - anchor_x)
    else:
        vals[i - 1] = anchor_v + slopes[i] * (bps[i - 1] - anchor_x)
    start = i - 1 if i > 0 else 0
    for j in range(start + 1, len(bps)):
        vals[j] = vals[j - 1] + slopes[j] * (bps[j] - bps[j - 1])
    for j in range(start - 1, -1, -1):
        vals[j] = vals[j + 1] - slopes[j + 1] * (bps[j + 1] - bps[j])
    k = bisect_right(bps, x)
    if k == 0:
        return vals[0] + slopes[0] * (x - bps[0])
    return vals[k - 1] + slopes[k] * (x - bps[k - 1])


def normalize(breakpoints: Iterable, slopes: Iterable, anchor: tuple) -> PwlFunction:
    """Build the canonical function from raw breakpoint/slope/anchor data.

    Pieces with equal adjacent slopes are merged (their shared breakpoint is
    deleted); the result evaluates identically to the raw data everywhere.
    The anchor may sit at any x-coordinate.
    """
    bps = [as_fraction(b) for b in breakpoints]
    ss = [as_fraction(s) for s in slopes]
    ax, av = anchor
    ax, av = as_fraction(ax), as_fraction(av)
    if len(ss) != len(bps) + 1:
        raise ValueError(
            f"need one slope per piece: {len(bps)} breakpoints require "
            f"{len(bps) + 1} slopes, got {len(ss)}"
        )
    for a, b in zip(bps, bps[1:]):
        if a >= b:
            raise ValueError("breakpoints must be strictly increasing")
    out_bps: list[Fraction] = []
    out_slopes: list[Fraction] = [ss[0]]
    for bp, s in zip(bps, ss[1:]):
        if s != out_slopes[-1]:
            out_bps.append(bp)
            out_slopes.append(s)
    if out_bps:
        new_anchor = (out_bps[0], _raw_value_at(bps, ss, ax, av, out_bps[0]))
    else:
        new_anchor = (_ZERO, _raw_value_at(bps, ss, ax, av, _ZERO))
    return PwlFunction._raw(tuple(out_bps), tuple(out_slopes), new_anchor)


def identity() -> PwlFunction:
    return PwlFunction((), (_ONE,), (_ZERO, _ZERO))


def constant(value) -> PwlFunction:
    return PwlFunction((), (_ZERO,), (_ZERO, as_fraction(value)))


def linear(slope, value_at_zero) -> PwlFunction:
    """The line ``x -> slope * x + value_at_zero``."""
    return PwlFunction((), (as_fraction(slope),), (_ZERO, as_fraction(value_at_zero)))


def negate(f: PwlFunction) -> PwlFunction:
    ax, av = f.anchor
    return PwlFunction(f.breakpoints, tuple(-s for s in f.slopes), (ax, -av))


# ---------------------------------------------------------------------------
# monomial (min/max of lines) form

@dataclass(frozen=True)
class MonomialForm:
    """A finite family of lines ``slope * x + constant``.

    A constant of ``None`` stands for +infinity; such terms never attain the
    minimum and are dropped on construction.  At least one finite term must
    remain.
    """

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, terms: Iterable[tuple]) -> None:
        kept = []
        for slope, const in terms:
            if const is None:
                continue
            kept.append((as_fraction(slope), as_fraction(const)))
        if not kept:
            raise ValueError("at least one finite term required")
        object.__setattr__(self, "terms", tuple(kept))


def _lower_envelope(lines: list[tuple[Fraction, Fraction]]) -> PwlFunction:
    # steepest slope wins as x -> -oo, so sort by decreasing slope; among
    # parallel lines only the lowest constant can ever attain the minimum
    lines = sorted(lines, key=lambda t: (-t[0], t[1]))
    dedup: list[tuple[Fraction, Fraction]] = []
    for ln in lines:
        if dedup and dedup[-1][0] == ln[0]:
            continue
        dedup.append(ln)

    def isect(l1, l2) -> Fraction:
        return (l2[1] - l1[1]) / (l1[0] - l2[0])

    hull: list[tuple[Fraction, Fraction]] = []
    for ln in dedup:
        while len(hull) >= 2 and isect(hull[-1], ln) <= isect(hull[-2], hull[-1]):
            hull.pop()
        hull.append(ln)
    if len(hull) == 1:
        return linear(hull[0][0], hull[0][1])
    bps = [isect(hull[i], hull[i + 1]) for i in range(len(hull) - 1)]
    slopes = [ln[0] for ln in hull]
    v0 = hull[0][0] * bps[0] + hull[0][1]
    return PwlFunction(tuple(bps), tuple(slopes), (bps[0], v0))


def from_monomials(terms, mode: str = "min") -> PwlFunction:
    """Pointwise ``min`` (or ``max``) of a family of lines.

    ``terms`` is a :class:`MonomialForm` or an iterable of ``(slope, const)``
    pairs where a const of ``None`` means +infinity (the term is dropped).
    """
    form = terms if isinstance(terms, MonomialForm) else MonomialForm(terms)
    if mode == "min":
        return _lower_envelope(list(form.terms))
    if mode == "max":
        flipped = [(-s, -c) for s, c in form.terms]
        return negate(_lower_envelope(flipped))
    raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")


# ---------------------------------------------------------------------------
# pointwise algebra

def _build_from_values(xs: Sequence[Fraction], values: Sequence[Fraction],
                       left_slope: Fraction, right_slope: Fraction) -> PwlFunction:
    """Canonical function through ``(xs[i], values[i])`` with given tail slopes.

    ``xs`` must be sorted and distinct; equal adjacent slopes merge in place.
    """
    slopes = [left_slope]
    for i in range(len(xs) - 1):
        slopes.append((values[i + 1] - values[i]) / (xs[i + 1] - xs[i]))
    slopes.append(right_slope)
    out_b: list[Fraction] = []
    out_v: list[Fraction] = []
    out_s: list[Fraction] = [slopes[0]]
    for bp, val, s in zip(xs, values, slopes[1:]):
        if s != out_s[-1]:
            out_b.append(bp)
            out_v.append(val)
            out_s.append(s)
    if out_b:
        return PwlFunction._raw(tuple(out_b), tuple(out_s), (out_b[0], out_v[0]))
    return PwlFunction._raw((), (out_s[0],),
                            (_ZERO, values[0] - out_s[0] * xs[0]))


def _merged_breakpoints(f: PwlFunction, g: PwlFunction) -> list[Fraction]:
    return sorted(set(f.breakpoints) | set(g.breakpoints))


def add(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Pointwise sum; the root count is at most the sum of the inputs'."""
    xs = _merged_breakpoints(f, g)
    if not xs:
        return linear(f.slopes[0] + g.slopes[0], f(_ZERO) + g(_ZERO))
    values = [f(x) + g(x) for x in xs]
    return _build_from_values(xs, values, f.slopes[0] + g.slopes[0],
                              f.slopes[-1] + g.slopes[-1])


def sub(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Pointwise difference ``f - g``."""
    return add(f, negate(g))


def _isolated_zeros(d: PwlFunction) -> set[Fraction]:
    """Zeros of ``d`` that sit on a piece with nonzero slope."""
    out: set[Fraction] = set()
    for lo, hi, slope, ref_x, ref_v in d.pieces():
        if slope == 0:
            continue
        x = ref_x - ref_v / slope
        if (lo is None or x >= lo) and (hi is None or x <= hi):
            out.add(x)
    return out


def tropical_min(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Pointwise minimum; at most ``p + q + 1`` roots for inputs with p, q."""
    cands = sorted(set(_merged_breakpoints(f, g)) | _isolated_zeros(sub(f, g)))
    if not cands:
        # parallel (or identical) lines: one of them is the minimum everywhere
        return f if f(_ZERO) <= g(_ZERO) else g
    values = [min(f(x), g(x)) for x in cands]
    left_probe = cands[0] - 1
    left = f if f(left_probe) <= g(left_probe) else g
    right_probe = cands[-1] + 1
    right = f if f(right_probe) <= g(right_probe) else g
    return _build_from_values(cands, values, left.slopes[0], right.slopes[-1])


def tropical_max(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Pointwise maximum."""
    return negate(tropical_min(negate(f), negate(g)))


def compose(g: PwlFunction, h: PwlFunction) -> PwlFunction:
    """Exact composition ``x -> g(h(x))``.

    Every slope of the result is a product of a slope of ``g`` and a slope of
    ``h``; beyond the candidate cut points (breakpoints of ``h`` plus the
    preimages under ``h`` of breakpoints of ``g``) the composition is linear.
    """
    cands: set[Fraction] = set(h.breakpoints)
    if g.breakpoints:
        for lo, hi, slope, ref_x, ref_v in h.pieces():
            if slope == 0:
                continue
            for b in g.breakpoints:
                x = ref_x + (b - ref_v) / slope
                if (lo is None or x >= lo) and (hi is None or x <= hi):
                    cands.add(x)
    xs = sorted(cands)
    g_at = g.value_at
    h_at = h.value_at
    if not xs:
        v0 = g_at(h_at(_ZERO))
        v1 = g_at(h_at(_ONE))
        return linear(v1 - v0, v0)
    values = [g_at(h_at(x)) for x in xs]
    left_slope = values[0] - g_at(h_at(xs[0] - 1))
    right_slope = g_at(h_at(xs[-1] + 1)) - values[-1]
    return _build_from_values(xs, values, left_slope, right_slope)


def iterate(f: PwlFunction, k: int) -> PwlFunction:
    """k-fold composition of ``f`` with itself; ``iterate(f, 0)`` is the identity."""
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    out = identity()
    for _ in range(k):
        out = compose(f, out)
    return out


def inverse(f: PwlFunction) -> PwlFunction:
    """Compositional inverse of a strictly increasing function.

    Requires every slope positive; the inverse has the images of the
    breakpoints as breakpoints and reciprocal slopes.
    """
    if any(s <= 0 for s in f.slopes):
        raise ValueError("inverse requires a strictly increasing function "
                         "(every slope positive, no zero-slope piece)")
    if not f.breakpoints:
        s = f.slopes[0]
        return linear(1 / s, -f.anchor[1] / s + f.anchor[0] / s)
    bps = f._breakpoint_values
    slopes = tuple(1 / s for s in f.slopes)
    return PwlFunction(bps, slopes, (bps[0], f.breakpoints[0]))


def roots(f: PwlFunction) -> list[Fraction]:
    """Sorted tropical roots (the breakpoints of the canonical form)."""
    return list(f.breakpoints)


def equals(f: PwlFunction, g: PwlFunction) -> bool:
    """Structural equality of canonical forms (equivalent to pointwise equality)."""
    return f == g


def equals_on_interval(f: PwlFunction, g: PwlFunction, interval: Interval) -> bool:
    """Exact equality of ``f`` and ``g`` restricted to a closed interval."""
    pts = {b for b in f.breakpoints + g.breakpoints if interval.contains(b)}
    if interval.lower is not None:
        pts.add(interval.lower)
    if interval.upper is not None:
        pts.add(interval.upper)
    ordered = sorted(pts)
    if not ordered:
        # interval is the whole line and neither function has a breakpoint
        return f(_ZERO) == g(_ZERO) and f(_ONE) == g(_ONE)
    if any(f(p) != g(p) for p in ordered):
        return False
    # between consecutive points both functions are linear, so endpoint
    # agreement settles each bounded span; unbounded tails need one probe
    if interval.lower is None and f(ordered[0] - 1) != g(ordered[0] - 1):
        return False
    if interval.upper is None and f(ordered[-1] + 1) != g(ordered[-1] + 1):
        return False
    return True


# ---------------------------------------------------------------------------
# classification

class FunctionTag(Enum):
    TROPICAL_POLYNOMIAL = "tropical-polynomial"
    TROPICAL_LAURENT_POLYNOMIAL = "tropical-laurent-polynomial"
    MONOTONE_INCREASING = "monotone-increasing"
    MONOTONE_DECREASING = "monotone-decreasing"
    NON_DECREASING = "non-decreasing"
    ALGEBRAIC_RATIONAL = "algebraic-rational"
    INTEGER_RATIONAL = "integer-rational"
    GENERAL = "general"


@dataclass(frozen=True)
class FunctionClass:
    tag: FunctionTag
    slopes_integer: bool


def classify(f: PwlFunction) -> FunctionClass:
    """Coarse shape class of ``f`` plus an exact slope-integrality flag.

    Ordered by specificity: the min-of-monomials classes (strictly decreasing
    slopes, nonnegative for the polynomial form) are recognised first, then
    the monotone classes, then sign-mixed functions fall through to GENERAL.
    """
    s = f.slopes
    integral = all(is_integral(x) for x in s)
    decreasing = all(a > b for a, b in zip(s, s[1:]))
    has_pos = any(x > 0 for x in s)
    has_neg = any(x < 0 for x in s)
    if decreasing and not has_neg:
        tag = FunctionTag.TROPICAL_POLYNOMIAL if integral else FunctionTag.ALGEBRAIC_RATIONAL
    elif not has_neg and all(x > 0 for x in s):
        tag = FunctionTag.MONOTONE_INCREASING
    elif not has_pos and all(x < 0 for x in s):
        tag = FunctionTag.MONOTONE_DECREASING
    elif not has_neg:
        tag = FunctionTag.NON_DECREASING
    elif has_pos and has_neg:
        tag = FunctionTag.GENERAL
    elif decreasing:
        # remaining: nonpositive slopes with a zero present
        tag = FunctionTag.TROPICAL_LAURENT_POLYNOMIAL if integral else FunctionTag.ALGEBRAIC_RATIONAL
    else:
        tag = FunctionTag.INTEGER_RATIONAL if integral else FunctionTag.ALGEBRAIC_RATIONAL
    return FunctionClass(tag, integral)


# ---------------------------------------------------------------------------
# blocks of edges

@dataclass(frozen=True)
class Block:
    """A maximal run of same-sign nonzero-slope edges (zero edges are skipped)."""

    sign: int
    edges: tuple[int, ...]


def blocks(f: PwlFunction) -> tuple[Block, ...]:
    """Blocks of ``f``: zero-slope edges belong to no block and do not split one."""
    out: list[tuple[int, list[int]]] = []
    for idx, s in enumerate(f.slopes):
        if s == 0:
            continue
        sign = 1 if s > 0 else -1
        if out and out[-1][0] == sign:
            out[-1][1].append(idx)
        else:
            out.append((sign, [idx]))
    return tuple(Block(sign, tuple(edges)) for sign, edges in out)


def block_count(f: PwlFunction) -> int:
    return len(blocks(f))
