"""Factoring piecewise-linear functions into binomial and trinomial composants.

A *binomial* is a two-edge function, a *trinomial* a three-edge one; a
*singular* trinomial has a zero-slope middle edge.  Every continuous
piecewise-linear function with rational slopes factors as a composition

    outer stage   -- non-monotone binomials and regular trinomials, one per
                     sign alternation of the nonzero slopes;
    middle stage  -- monotone binomials, one per root with same-sign
                     neighbouring slopes;
    inner stage   -- singular trinomials, one per zero-slope edge.

The integer-slope variants keep every composant's slopes integral (the outer
stage then uses only slopes +-1) except for the singular stage, whose pieces
may be rational.  All factorizations are exact: recomposition reproduces the
input's canonical form, which :func:`verify` checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

from .pwl import (
    PwlFunction,
    block_count,
    compose,
    identity,
    linear,
    negate,
    normalize,
)
from .rational import as_fraction, is_integral

__all__ = [
    "ComposantKind",
    "Composant",
    "Decomposition",
    "straighten",
    "decompose_algebraic_polynomial",
    "decompose_monotone_algebraic",
    "decompose_algebraic_rational",
    "decompose_monotone_integer",
    "decompose_integer_rational",
    "complete_decomposability",
    "decompose_complete",
    "verify",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ComposantKind(Enum):
    ALGEBRAIC_BINOMIAL = "algebraic-binomial"
    MONOTONE_BINOMIAL = "monotone-binomial"
    NON_MONOTONE_BINOMIAL = "non-monotone-binomial"
    REGULAR_TRINOMIAL = "regular-trinomial"
    SINGULAR_TRINOMIAL = "singular-trinomial"
    LINEAR = "linear"


@dataclass(frozen=True)
class Composant:
    function: PwlFunction
    kind: ComposantKind
    degenerate: bool = False


@dataclass(frozen=True)
class Decomposition:
    """An ordered factorization; the last composant is applied first."""

    composants: tuple[Composant, ...]
    negated: bool = False
    step_count: int = 0

    def recompose(self) -> PwlFunction:
        out = identity()
        for comp in reversed(self.composants):
            out = compose(comp.function, out)
        return out

    def _tally(self, kind: ComposantKind) -> int:
        return sum(1 for c in self.composants if c.kind is kind)

    @property
    def k0(self) -> int:
        return self._tally(ComposantKind.SINGULAR_TRINOMIAL)

    @property
    def k1(self) -> int:
        return self._tally(ComposantKind.MONOTONE_BINOMIAL)

    @property
    def k2(self) -> int:
        return self._tally(ComposantKind.NON_MONOTONE_BINOMIAL)

    @property
    def k3(self) -> int:
        return self._tally(ComposantKind.REGULAR_TRINOMIAL)

    @property
    def counts(self) -> dict[str, int]:
        return {"k0": self.k0, "k1": self.k1, "k2": self.k2, "k3": self.k3}

    def __len__(self) -> int:
        return len(self.composants)


def _kind_ok(comp: Composant) -> bool:
    f = comp.function
    k = len(f.breakpoints)
    s = f.slopes
    kind = comp.kind
    if kind is ComposantKind.LINEAR:
        return k == 0
    if kind is ComposantKind.ALGEBRAIC_BINOMIAL:
        return k == 1 and s[0] > s[1]
    if kind is ComposantKind.MONOTONE_BINOMIAL:
        return k == 1 and s[0] > 0 and s[1] > 0
    if kind is ComposantKind.NON_MONOTONE_BINOMIAL:
        return k == 1 and s[0] * s[1] < 0
    if kind is ComposantKind.REGULAR_TRINOMIAL:
        return k == 2 and all(x != 0 for x in s)
    if kind is ComposantKind.SINGULAR_TRINOMIAL:
        if not comp.degenerate:
            return k == 2 and s[1] == 0 and s[0] != 0 and s[2] != 0
        if k == 1:
            return (s[0] == 0) != (s[1] == 0)
        return k == 0 and s[0] == 0
    return False


def verify(decomposition: Decomposition, f: PwlFunction) -> bool:
    """True iff recomposition equals ``f`` exactly and every kind tag is valid."""
    if not all(_kind_ok(c) for c in decomposition.composants):
        return False
    return decomposition.recompose() == f


# ---------------------------------------------------------------------------
# straightening (removal of one root with same-sign neighbouring slopes)

def _max_at_most(f: PwlFunction, x: Fraction) -> Fraction | None:
    """sup of f on (-oo, x]; None means unbounded."""
    if f.slopes[0] < 0:
        return None
    best = f(x)
    for b, v in zip(f.breakpoints, f._breakpoint_values):
        if b <= x and v > best:
            best = v
    return best


def _min_at_most(f: PwlFunction, x: Fraction) -> Fraction | None:
    if f.slopes[0] > 0:
        return None
    best = f(x)
    for b, v in zip(f.breakpoints, f._breakpoint_values):
        if b <= x and v < best:
            best = v
    return best


def _max_at_least(f: PwlFunction, x: Fraction) -> Fraction | None:
    if f.slopes[-1] > 0:
        return None
    best = f(x)
    for b, v in zip(f.breakpoints, f._breakpoint_values):
        if b >= x and v > best:
            best = v
    return best


def _min_at_least(f: PwlFunction, x: Fraction) -> Fraction | None:
    if f.slopes[-1] < 0:
        return None
    best = f(x)
    for b, v in zip(f.breakpoints, f._breakpoint_values):
        if b >= x and v < best:
            best = v
    return best


def straighten(f: PwlFunction, root_index: int) -> tuple[PwlFunction, PwlFunction]:
    """Remove the root at ``breakpoints[root_index]`` by factoring ``f = g o h``.

    Requires the two slopes adjacent to the root to be nonzero and of equal
    sign, and ``f`` to stay on one side of the root's value on each side of
    the root (automatic for monotone inputs).  ``h`` agrees with ``f`` left of
    the root and is a rescaled copy right of it; ``g`` is a one-root binomial
    that undoes the rescaling.  ``h`` has exactly one root fewer than ``f``.
    """
    bps = f.breakpoints
    if not 0 <= root_index < len(bps):
        raise ValueError(f"no root at index {root_index}: function has {len(bps)} roots")
    left, right = f.slopes[root_index], f.slopes[root_index + 1]
    if left == 0 or right == 0:
        raise ValueError("cannot straighten at a root adjacent to a zero-slope edge")
    if (left > 0) != (right > 0):
        raise ValueError("cannot straighten at a root with opposite-sign slopes; "
                         "use the non-monotone factorization instead")
    x0 = bps[root_index]
    v0 = f._breakpoint_values[root_index]
    if left > 0:
        sound = _max_at_most(f, x0) == v0 and _min_at_least(f, x0) == v0
    else:
        sound = _min_at_most(f, x0) == v0 and _max_at_least(f, x0) == v0
    if not sound:
        raise ValueError("straightening requires the function to stay below the "
                         "root value on one side and above it on the other")
    ratio = left / right          # > 0
    new_slopes = f.slopes[: root_index + 1] + tuple(s * ratio for s in f.slopes[root_index + 1:])
    h = normalize(bps, new_slopes, f.anchor)
    if left > 0:
        g = PwlFunction((v0,), (_ONE, right / left), (v0, v0))
    else:
        g = PwlFunction((v0,), (right / left, _ONE), (v0, v0))
    return g, h


# ---------------------------------------------------------------------------
# one-root-per-composant factorizations (monotone / polynomial-shaped inputs)

def _is_algebraic_polynomial(f: PwlFunction) -> bool:
    s = f.slopes
    return all(a > b for a, b in zip(s, s[1:])) and s[-1] >= 0


def _single_composant(f: PwlFunction, monotone_kind: ComposantKind) -> Composant:
    k = len(f.breakpoints)
    if k == 0:
        return Composant(f, ComposantKind.LINEAR)
    if k == 1:
        return Composant(f, monotone_kind)
    raise AssertionError("single composant expects at most one root")


def _peel_left_roots(f: PwlFunction, kind: ComposantKind, rightmost: bool) -> Decomposition:
    comps: list[Composant] = []
    work = f
    steps = 0
    while len(work.breakpoints) > 1:
        index = len(work.breakpoints) - 1 if rightmost else 0
        g, work = straighten(work, index)
        comps.append(Composant(g, kind))
        steps += 1
    if len(work.breakpoints) == 1:
        comps.append(Composant(work, kind))
    elif work != identity():
        comps.append(Composant(work, ComposantKind.LINEAR))
    return Decomposition(tuple(comps), step_count=steps)


def decompose_algebraic_polynomial(f: PwlFunction) -> Decomposition:
    """Factor a min-of-lines function (strictly decreasing slopes, all >= 0)
    into exactly one convex binomial per root."""
    if not _is_algebraic_polynomial(f):
        raise ValueError("input must have strictly decreasing nonnegative slopes")
    return _peel_left_roots(f, ComposantKind.ALGEBRAIC_BINOMIAL, rightmost=False)


def decompose_monotone_algebraic(f: PwlFunction, *, rightmost_first: bool = False) -> Decomposition:
    """Factor a strictly increasing function into one monotone binomial per root.

    Roots are processed left to right by default; ``rightmost_first`` picks
    the mirror order, producing a structurally different but equally valid
    factorization.
    """
    if any(s <= 0 for s in f.slopes):
        raise ValueError("input must be strictly increasing (every slope positive)")
    return _peel_left_roots(f, ComposantKind.MONOTONE_BINOMIAL, rightmost=rightmost_first)


# ---------------------------------------------------------------------------
# full factorization of a general rational-slope function

def _first_nonzero_slope(f: PwlFunction) -> Fraction | None:
    for s in f.slopes:
        if s != 0:
            return s
    return None


def _stage1_pivots(f: PwlFunction) -> tuple[int, int | None]:
    """Pivot root indices: ``x0`` maximizes the value among roots that still
    have a negative edge somewhere to their right (leftmost on ties); ``x1``
    minimizes the value among roots right of ``x0`` (leftmost on ties)."""
    slopes = f.slopes
    n = len(f.breakpoints)
    vals = f._breakpoint_values
    suffix_neg = [False] * (len(slopes) + 1)
    for j in range(len(slopes) - 1, -1, -1):
        suffix_neg[j] = suffix_neg[j + 1] or slopes[j] < 0
    i0 = None
    for i in range(n):
        if suffix_neg[i + 1] and (i0 is None or vals[i] > vals[i0]):
            i0 = i
    if i0 is None:
        raise AssertionError("no pivot: function has no negative edge right of a root")
    i1 = None
    for j in range(i0 + 1, n):
        if i1 is None or vals[j] < vals[i1]:
            i1 = j
    return i0, i1


def _stage1_binomial(f: PwlFunction, i0: int) -> tuple[Composant, PwlFunction]:
    slopes = f.slopes
    v0 = f._breakpoint_values[i0]
    left, right = slopes[i0], slopes[i0 + 1]
    if left != 0 and right != 0:
        g = PwlFunction((v0,), (_ONE, right / left), (v0, v0))
        scale = left / right
    else:
        g = PwlFunction((v0,), (_ONE, -_ONE), (v0, v0))
        scale = -_ONE
    new_slopes = slopes[: i0 + 1] + tuple(s * scale for s in slopes[i0 + 1:])
    h = normalize(f.breakpoints, new_slopes, f.anchor)
    return Composant(g, ComposantKind.NON_MONOTONE_BINOMIAL), h


def _stage1_trinomial(f: PwlFunction, i0: int, i1: int) -> tuple[Composant, PwlFunction]:
    slopes = f.slopes
    vals = f._breakpoint_values
    v0, v1 = vals[i0], vals[i1]
    top = 2 * v0 - v1
    s_in, s_out = slopes[i0], slopes[i0 + 1]      # around the crest
    t_in, t_out = slopes[i1], slopes[i1 + 1]      # around the trough
    if s_in != 0 and s_out != 0:
        zone1 = -s_out / s_in
        g1 = -s_in / s_out
    else:
        zone1 = _ONE
        g1 = _ONE
    if t_in != 0 and t_out != 0:
        zone3 = -t_in / t_out
        g3 = -t_out / t_in
    else:
        zone3 = _ONE
        g3 = _ONE
    new_slopes = (
        tuple(s * zone1 for s in slopes[: i0 + 1])
        + tuple(-s for s in slopes[i0 + 1: i1 + 1])
        + tuple(s * zone3 for s in slopes[i1 + 1:])
    )
    anchor_v = zone1 * f.anchor[1] + v0 * (1 - zone1)
    h = normalize(f.breakpoints, new_slopes, (f.anchor[0], anchor_v))
    g = normalize((v0, top), (g1, -_ONE, g3), (v0, v0))
    return Composant(g, ComposantKind.REGULAR_TRINOMIAL), h


def _case_a(f: PwlFunction, i0: int, i1: int | None) -> bool:
    """True if the function never exceeds the crest value right of the trough."""
    if i1 is None:
        return True
    sup = _max_at_least(f, f.breakpoints[i1])
    return sup is not None and sup <= f._breakpoint_values[i0]


def _zero_edge_count(f: PwlFunction) -> int:
    return sum(1 for s in f.slopes if s == 0)


def _singular_is_degenerate(f: PwlFunction) -> bool:
    return len(f.breakpoints) < 2


def _extract_plateau_rational(f: PwlFunction) -> tuple[Composant, PwlFunction]:
    """Peel the leftmost plateau off a nondecreasing function whose every
    second edge has zero slope; the remainder has no root at the seam."""
    slopes = f.slopes
    z = slopes.index(_ZERO)
    bps = f.breakpoints
    vals = f._breakpoint_values
    if z == 0:
        # unbounded plateau on the left
        x1 = bps[0]
        comp = PwlFunction((x1,), (_ZERO, _ONE), (x1, x1))
        rest = PwlFunction(bps[1:], slopes[1:], (bps[1], vals[1]))
        return Composant(comp, ComposantKind.SINGULAR_TRINOMIAL, degenerate=True), rest
    if z == len(slopes) - 1:
        # unbounded plateau on the right
        x0 = bps[-1]
        comp = PwlFunction((x0,), (_ONE, _ZERO), (x0, x0))
        rest = PwlFunction(bps[:-1], slopes[:-1], f.anchor)
        return Composant(comp, ComposantKind.SINGULAR_TRINOMIAL, degenerate=True), rest
    x0, x1 = bps[z - 1], bps[z]
    s, p = slopes[z - 1], slopes[z + 1]
    comp = PwlFunction((x0, x1), (_ONE, _ZERO, p / s), (x0, x0))
    # remainder: left part unchanged, right part pulled back through the
    # composant's last piece, so its seam slopes agree and merge
    pulled = tuple(x0 + (p / s) * (b - x1) for b in bps[z + 1:])
    new_bps = bps[:z] + pulled
    new_slopes = slopes[:z] + tuple(q * (s / p) for q in slopes[z + 1:])
    rest = normalize(new_bps, new_slopes, (new_bps[0], vals[0]))
    return Composant(comp, ComposantKind.SINGULAR_TRINOMIAL), rest


def _extract_plateau_integer(f: PwlFunction) -> tuple[Composant, PwlFunction]:
    """Peel the leftmost plateau with an identity-slope singular trinomial,
    keeping the remainder's slopes integral (the plateau is spliced out)."""
    slopes = f.slopes
    z = slopes.index(_ZERO)
    bps = f.breakpoints
    vals = f._breakpoint_values
    if len(slopes) == 1:
        # constant function: itself a fully degenerate singular composant
        return Composant(f, ComposantKind.SINGULAR_TRINOMIAL, degenerate=True), identity()
    if z == 0:
        x1 = bps[0]
        comp = PwlFunction((x1,), (_ZERO, _ONE), (x1, x1))
        rest = PwlFunction(bps[1:], slopes[1:], (bps[1], vals[1])) if len(bps) > 1 \
            else linear(slopes[1], vals[0] - slopes[1] * bps[0])
        return Composant(comp, ComposantKind.SINGULAR_TRINOMIAL, degenerate=True), rest
    if z == len(slopes) - 1:
        x0 = bps[-1]
        comp = PwlFunction((x0,), (_ONE, _ZERO), (x0, x0))
        rest = PwlFunction(bps[:-1], slopes[:-1], f.anchor) if len(bps) > 1 \
            else linear(slopes[0], vals[0] - slopes[0] * bps[0])
        return Composant(comp, ComposantKind.SINGULAR_TRINOMIAL, degenerate=True), rest
    x0, x1 = bps[z - 1], bps[z]
    shift = x1 - x0
    comp = PwlFunction((x0, x1), (_ONE, _ZERO, _ONE), (x0, x0))
    new_bps = bps[:z] + tuple(b - shift for b in bps[z + 1:])
    new_slopes = slopes[:z] + slopes[z + 1:]
    rest = normalize(new_bps, new_slopes, (new_bps[0], vals[0]))
    return Composant(comp, ComposantKind.SINGULAR_TRINOMIAL), rest


def _absorb_linear(comps: list[Composant], work: PwlFunction) -> list[Composant]:
    """Fold a trailing linear remainder into the innermost composant."""
    if work == identity():
        return comps
    if not work.is_linear:
        raise AssertionError("remainder after all stages must be linear")
    if not comps:
        return [Composant(work, ComposantKind.LINEAR)]
    last = comps[-1]
    merged = compose(last.function, work)
    comps[-1] = Composant(merged, last.kind, last.degenerate)
    return comps


def decompose_algebraic_rational(f: PwlFunction) -> Decomposition:
    """Full three-stage factorization of an arbitrary rational-slope function.

    Stage one removes sign alternations with non-monotone binomials (one
    block consumed each) and regular trinomials (two blocks); stage two
    straightens the remaining same-sign roots with monotone binomials; stage
    three factors out one singular trinomial per zero-slope edge.  Functions
    whose first nonzero edge slopes downward are negated first and the sign
    fix is prepended as a linear composant.
    """
    comps: list[Composant] = []
    steps = 0
    work = f
    negated = False
    first = _first_nonzero_slope(work)
    if first is not None and first < 0:
        negated = True
        comps.append(Composant(linear(-1, 0), ComposantKind.LINEAR))
        work = negate(work)
    # stage one: kill sign alternations
    while any(s < 0 for s in work.slopes):
        before = block_count(work)
        i0, i1 = _stage1_pivots(work)
        if _case_a(work, i0, i1):
            comp, work = _stage1_binomial(work, i0)
            expected_drop = 1
        else:
            comp, work = _stage1_trinomial(work, i0, i1)
            expected_drop = 2
        comps.append(comp)
        steps += 1
        if block_count(work) != before - expected_drop:
            raise AssertionError("block count did not drop as constructed")
    # stage two: straighten roots with positive slopes on both sides
    while True:
        idx = next((i for i in range(len(work.breakpoints))
                    if work.slopes[i] > 0 and work.slopes[i + 1] > 0), None)
        if idx is None:
            break
        g, work = straighten(work, idx)
        comps.append(Composant(g, ComposantKind.MONOTONE_BINOMIAL))
        steps += 1
    # stage three: peel plateaus, innermost first
    singulars: list[Composant] = []
    while _zero_edge_count(work) >= 2:
        comp, work = _extract_plateau_rational(work)
        singulars.append(comp)
        steps += 1
    if _zero_edge_count(work) == 1:
        comps.append(Composant(work, ComposantKind.SINGULAR_TRINOMIAL,
                               degenerate=_singular_is_degenerate(work)))
        comps.extend(reversed(singulars))
        work = identity()
    else:
        comps.extend(reversed(singulars))
    comps = _absorb_linear(comps, work)
    return Decomposition(tuple(comps), negated=negated, step_count=steps)


# ---------------------------------------------------------------------------
# integer-slope factorizations

def _require_integer_slopes(f: PwlFunction) -> None:
    if not all(is_integral(s) for s in f.slopes):
        raise ValueError("input must have integer slopes")


def _monotone_integer_peel(f: PwlFunction) -> tuple[list[Composant], int]:
    """Factor a strictly increasing integer-slope function into monotone
    binomials/trinomials, splitting at interior roots.

    Peels a left trinomial at the second root while at least three roots
    remain, tracking the remainder implicitly so the whole run is linear in
    the number of edges.  Returns composants ordered outermost first.
    """
    bps = f.breakpoints
    slopes = f.slopes
    vals = f._breakpoint_values
    k = len(bps)
    if k == 0:
        raise AssertionError("peel expects at least one root")
    if k <= 2:
        kind = ComposantKind.MONOTONE_BINOMIAL if k == 1 else ComposantKind.REGULAR_TRINOMIAL
        return [Composant(f, kind)], 0

    def emit(fn: PwlFunction) -> Composant:
        kinds = {1: ComposantKind.MONOTONE_BINOMIAL, 2: ComposantKind.REGULAR_TRINOMIAL}
        return Composant(fn, kinds[len(fn.breakpoints)])

    inner: list[Composant] = [
        emit(normalize(bps[:2], (slopes[0], slopes[1], _ONE), (bps[0], vals[0])))
    ]
    steps = 1
    m = 1  # remainder = identity below vals[m], then f shifted by vals[m] - bps[m]
    while True:
        seam = slopes[m + 1] != 1
        remaining_roots = (1 if seam else 0) + (k - 1 - m)
        delta = vals[m] - bps[m]
        if remaining_roots <= 2:
            rest = normalize((vals[m],) + tuple(b + delta for b in bps[m + 1:]),
                             (_ONE,) + slopes[m + 1:], (vals[m], vals[m]))
            inner.append(emit(rest))
            break
        if seam:
            h = normalize((vals[m], bps[m + 1] + delta),
                          (_ONE, slopes[m + 1], _ONE), (vals[m], vals[m]))
            m += 1
        else:
            h = normalize((bps[m + 1] + delta, bps[m + 2] + delta),
                          (_ONE, slopes[m + 2], _ONE),
                          (bps[m + 1] + delta, bps[m + 1] + delta))
            m += 2
        inner.append(emit(h))
        steps += 1
    inner.reverse()
    return inner, steps


def decompose_monotone_integer(f: PwlFunction) -> Decomposition:
    """Factor a strictly increasing integer-slope function into monotone
    integer binomials and trinomials (at most one composant per root)."""
    _require_integer_slopes(f)
    if any(s < 1 for s in f.slopes):
        raise ValueError("input must be strictly increasing with integer slopes >= 1")
    if f.is_linear:
        comps = () if f == identity() else (Composant(f, ComposantKind.LINEAR),)
        return Decomposition(comps)
    comps, steps = _monotone_integer_peel(f)
    return Decomposition(tuple(comps), step_count=steps)


def decompose_integer_rational(f: PwlFunction) -> Decomposition:
    """Factor an arbitrary integer-slope function with +-1-slope non-monotone
    composants outside, monotone integer binomials/trinomials in the middle,
    and singular monotone trinomials innermost."""
    _require_integer_slopes(f)
    comps: list[Composant] = []
    steps = 0
    work = f
    negated = False
    first = _first_nonzero_slope(work)
    if first is not None and first < 0:
        negated = True
        comps.append(Composant(linear(-1, 0), ComposantKind.LINEAR))
        work = negate(work)
    # outer stage: slopes +-1 only
    while any(s < 0 for s in work.slopes):
        before = block_count(work)
        i0, i1 = _stage1_pivots(work)
        vals = work._breakpoint_values
        v0 = vals[i0]
        if _case_a(work, i0, i1):
            g = PwlFunction((v0,), (_ONE, -_ONE), (v0, v0))
            new_slopes = work.slopes[: i0 + 1] + tuple(-s for s in work.slopes[i0 + 1:])
            work = normalize(work.breakpoints, new_slopes, work.anchor)
            comps.append(Composant(g, ComposantKind.NON_MONOTONE_BINOMIAL))
            drop = 1
        else:
            v1 = vals[i1]
            top = 2 * v0 - v1
            g = PwlFunction((v0, top), (_ONE, -_ONE, _ONE), (v0, v0))
            new_slopes = (work.slopes[: i0 + 1]
                          + tuple(-s for s in work.slopes[i0 + 1: i1 + 1])
                          + work.slopes[i1 + 1:])
            work = normalize(work.breakpoints, new_slopes, work.anchor)
            comps.append(Composant(g, ComposantKind.REGULAR_TRINOMIAL))
            drop = 2
        steps += 1
        if block_count(work) != before - drop:
            raise AssertionError("block count did not drop as constructed")
    # inner stage built first: splice out plateaus with identity-slope singulars
    singulars: list[Composant] = []
    while _zero_edge_count(work) >= 1:
        comp, work = _extract_plateau_integer(work)
        singulars.append(comp)
        steps += 1
    # middle stage: monotone integer peel
    if not work.is_linear:
        mid, mid_steps = _monotone_integer_peel(work)
        comps.extend(mid)
        steps += mid_steps
        work = identity()
        comps.extend(reversed(singulars))
    else:
        if singulars and work != identity():
            outermost = singulars[-1]
            singulars[-1] = Composant(compose(work, outermost.function),
                                      outermost.kind, outermost.degenerate)
            work = identity()
        comps.extend(reversed(singulars))
        comps = _absorb_linear(comps, work)
    return Decomposition(tuple(comps), negated=negated, step_count=steps)


# ---------------------------------------------------------------------------
# complete decomposability into binomials alone

def complete_decomposability(slopes: Sequence) -> tuple[bool, tuple[int, ...]]:
    """Divisibility test: a monotone integer-slope function with edge slopes
    ``a_0, ..., a_n`` is a composition of binomials iff the product of the
    reduced denominators of the consecutive ratios ``a_i / a_{i-1}`` divides
    ``a_0``.  Returns the verdict together with those denominators."""
    a = [as_fraction(s) for s in slopes]
    if not a:
        raise ValueError("at least one slope required")
    if any(not is_integral(x) or x < 1 for x in a):
        raise ValueError("slopes must be positive integers")
    ints = [int(x) for x in a]
    qs = []
    for prev, cur in zip(ints, ints[1:]):
        qs.append(prev // gcd(cur, prev))
    return ints[0] % prod(qs, start=1) == 0, tuple(qs)


def decompose_complete(f: PwlFunction) -> Decomposition:
    """Constructive converse of :func:`complete_decomposability`: factor ``f``
    into one monotone binomial per root, anchored so that each binomial's root
    is the forced preimage of the corresponding root of ``f``."""
    ok, qs = complete_decomposability(f.slopes)
    if not ok:
        raise ValueError("slope sequence fails the complete-decomposability criterion")
    a = [int(s) for s in f.slopes]
    n = len(f.breakpoints)
    if n == 0:
        comps = () if f == identity() else (Composant(f, ComposantKind.LINEAR),)
        return Decomposition(comps)
    b = [0] * (n + 1)  # 1-based
    c = [Fraction(0)] * (n + 1)
    for j in range(1, n):
        b[j] = qs[j - 1]
    lead = prod(b[1:n], start=1)
    b[n] = a[0] // lead
    for j in range(1, n + 1):
        cj = Fraction(b[j] * a[j], a[j - 1])
        if not is_integral(cj):
            raise AssertionError("constructed slope is not integral")
        c[j] = cj
    gs: list[PwlFunction | None] = [None] * (n + 1)
    ts = f.breakpoints
    for m in range(n, 0, -1):
        r = ts[m - 1]
        for j in range(n, m, -1):
            r = gs[j](r)
        gs[m] = PwlFunction((r,), (Fraction(b[m]), c[m]), (r, r))
    # one additive shift on the outermost composant matches the level of f
    probe = ts[-1]
    got = probe
    for j in range(n, 0, -1):
        got = gs[j](got)
    delta = f(probe) - got
    g1 = gs[1]
    gs[1] = PwlFunction(g1.breakpoints, g1.slopes, (g1.anchor[0], g1.anchor[1] + delta))
    comps = tuple(Composant(g, ComposantKind.MONOTONE_BINOMIAL) for g in gs[1:])
    return Decomposition(comps, step_count=n)
