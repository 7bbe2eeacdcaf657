"""Commutation of increasing min-plus polynomials, with structural certificates.

Two increasing piecewise-linear maps f, g commute exactly when their
compositions agree as canonical forms.  For min-of-monomials functions whose
slopes are integers >= 1 (no constant monomial), a commuting pair always
admits a certificate on each side of the common fixed-point boundary x0:
either both are iterates of one increasing map h fixing x0, or both are
linear there, or the pair is a pair of translations (x0 infinite).  The
certificate is found by walking a finite graph on the roots of f and g:
each root has a successor under f^{-1}, g o f^{-1} or g, so the walk closes
a cycle that yields exponents r, s with g^s = f^r on the whole side; a
Bezout combination then produces h with f = h^(s/n), g = h^(r/n), n = gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .pwl import (
    FunctionTag,
    Interval,
    PwlFunction,
    classify,
    compose,
    equals_on_interval,
    identity,
    inverse,
    iterate,
    linear,
    sub,
)
from .rational import as_fraction

__all__ = [
    "FixedPointSet",
    "SideKind",
    "SideWitness",
    "CommutationWitness",
    "NoWitness",
    "commutes",
    "first_disagreement",
    "fixed_points",
    "commuting_witness",
    "verify_witness",
    "shared_power",
    "build_example_pair",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# fixed points

FixedPointSet = tuple[Interval, ...]


def fixed_points(f: PwlFunction) -> FixedPointSet:
    """Maximal disjoint closed intervals on which ``f(x) = x``, solved per edge."""
    spans: list[tuple[Fraction | None, Fraction | None]] = []
    for lo, hi, slope, ref_x, ref_v in f.pieces():
        d_slope = slope - 1
        d_ref = ref_v - ref_x
        if d_slope == 0:
            if d_ref == 0:
                spans.append((lo, hi))
            continue
        x = ref_x - d_ref / d_slope
        if (lo is None or x >= lo) and (hi is None or x <= hi):
            spans.append((x, x))
    if not spans:
        return ()
    spans.sort(key=lambda t: (t[0] is not None, t[0]))
    merged: list[list[Fraction | None]] = [list(spans[0])]
    for lo, hi in spans[1:]:
        prev = merged[-1]
        if prev[1] is None or (lo is not None and lo > prev[1]):
            if prev[1] is not None and lo is not None and lo > prev[1]:
                merged.append([lo, hi])
                continue
        # touching or overlapping: closed intervals sharing a point merge
        if prev[1] is None:
            continue
        if hi is None or hi > prev[1]:
            prev[1] = hi
    return tuple(Interval(lo, hi) for lo, hi in merged)


def commutes(f: PwlFunction, g: PwlFunction) -> bool:
    """Exact test of ``f o g == g o f`` on canonical forms."""
    return compose(f, g) == compose(g, f)


def first_disagreement(f: PwlFunction, g: PwlFunction) -> Fraction | None:
    """The smallest probe point at which the two compositions differ.

    Probes the breakpoints of the difference, midpoints between them, and one
    sentinel beyond each end; returns ``None`` when the compositions agree.
    """
    d = sub(compose(f, g), compose(g, f))
    if d == PwlFunction((), (_ZERO,), (_ZERO, _ZERO)):
        return None
    pts: list[Fraction] = []
    if d.breakpoints:
        pts.append(d.breakpoints[0] - 1)
        for a, b in zip(d.breakpoints, d.breakpoints[1:]):
            pts.extend((a, (a + b) / 2))
        pts.extend((d.breakpoints[-1], d.breakpoints[-1] + 1))
    else:
        pts = [_ZERO, _ONE]
    for x in pts:
        if d(x) != 0:
            return x
    raise AssertionError("nonzero difference with no disagreeing probe")


# ---------------------------------------------------------------------------
# witnesses

class SideKind(Enum):
    SHARED_ROOT = "shared-root"
    LINEAR_PAIR = "linear-pair"
    IDENTITY = "identity"


@dataclass(frozen=True)
class SideWitness:
    kind: SideKind
    h: PwlFunction | None = None
    f_power: int | None = None
    g_power: int | None = None
    f_slope: Fraction | None = None
    g_slope: Fraction | None = None


@dataclass(frozen=True)
class CommutationWitness:
    """Per-side certificate; ``x0 = None`` encodes the boundary at +infinity."""

    x0: Fraction | None
    left: SideWitness | None
    right: SideWitness | None
    translation: tuple[Fraction, Fraction] | None = None


@dataclass(frozen=True)
class NoWitness:
    point: Fraction
    reason: str = "compositions differ"


def _is_poly_no_free_term(f: PwlFunction) -> bool:
    return (classify(f).tag is FunctionTag.TROPICAL_POLYNOMIAL
            and all(s >= 1 for s in f.slopes))


def _require_poly_no_free_term(f: PwlFunction, name: str) -> None:
    if not _is_poly_no_free_term(f):
        raise ValueError(
            f"{name} must be a min-of-monomials function with strictly "
            "decreasing integer slopes, all >= 1 (no constant monomial)"
        )


def shared_power(f: PwlFunction, g: PwlFunction, max_power: int,
                 interval: Interval | None = None) -> tuple[int, int] | None:
    """Smallest ``(k, m)`` with ``f^k = g^m`` on ``interval``, bounded search."""
    where = interval or Interval.whole()
    f_pows = [identity()]
    g_pows = [identity()]
    for _ in range(max_power):
        f_pows.append(compose(f, f_pows[-1]))
        g_pows.append(compose(g, g_pows[-1]))
    for total in range(2, 2 * max_power + 1):
        for k in range(max(1, total - max_power), min(max_power, total - 1) + 1):
            m = total - k
            if equals_on_interval(f_pows[k], g_pows[m], where):
                return k, m
    return None


def _side_nodes(f: PwlFunction, g: PwlFunction, side: Interval) -> list[Fraction]:
    pts = set(f.breakpoints) | set(g.breakpoints)
    open_pts = []
    for p in pts:
        if side.lower is not None and p <= side.lower:
            continue
        if side.upper is not None and p >= side.upper:
            continue
        open_pts.append(p)
    return sorted(open_pts)


def _side_witness(f: PwlFunction, g: PwlFunction, side: Interval,
                  x0: Fraction | None) -> SideWitness:
    ident = identity()
    f_is_id = equals_on_interval(f, ident, side)
    g_is_id = equals_on_interval(g, ident, side)
    if f_is_id and g_is_id:
        return SideWitness(SideKind.IDENTITY)
    if f_is_id:
        return SideWitness(SideKind.SHARED_ROOT, h=g, f_power=0, g_power=1)
    if g_is_id:
        return SideWitness(SideKind.SHARED_ROOT, h=f, f_power=1, g_power=0)

    nodes = _side_nodes(f, g, side)
    if not nodes:
        # both linear on the side, anchored at the fixed boundary
        return SideWitness(SideKind.LINEAR_PAIR,
                           f_slope=_slope_on_side(f, side),
                           g_slope=_slope_on_side(g, side))

    t_f = set(f.breakpoints)
    t_g = set(g.breakpoints)
    f_inv = inverse(f)
    node_set = set(nodes)

    def successor(x: Fraction) -> tuple[Fraction, int, int]:
        # returns (next node, added g-power, added f-inverse-power)
        if x in t_g:
            y = f_inv(x)
            if y in t_g:
                return y, 0, 1
            z = g(y)
            if z in t_f:
                return z, 1, 1
            raise AssertionError("root has no successor; inputs do not commute?")
        z = g(x)
        if z in t_f:
            return z, 1, 0
        raise AssertionError("root has no successor; inputs do not commute?")

    start = nodes[0]
    seen: dict[Fraction, tuple[int, int]] = {start: (0, 0)}
    s = r = 0
    x = start
    for _ in range(len(nodes) + 1):
        x, ds, dr = successor(x)
        s += ds
        r += dr
        if x in seen:
            s0, r0 = seen[x]
            s, r = s - s0, r - r0
            break
        if x not in node_set:
            raise AssertionError("walk left the node set")
        seen[x] = (s, r)
    else:
        raise AssertionError("no cycle within the node-count bound")
    if s <= 0 or r <= 0:
        raise AssertionError("degenerate cycle exponents")
    # g^s = f^r at the cycle point extends to the whole side
    if not equals_on_interval(iterate(g, s), iterate(f, r), side):
        raise AssertionError("cycle relation failed to extend to the side")
    n = gcd(s, r)
    sn, rn = s // n, r // n
    if not equals_on_interval(iterate(g, sn), iterate(f, rn), side):
        raise AssertionError("reduced power relation failed")
    # positive integers i, j with j*rn - i*sn = 1
    if sn == 1:
        j, i = 1, rn - 1
    else:
        j = pow(rn, -1, sn)
        i = (j * rn - 1) // sn
    h = compose(iterate(g, j), iterate(f_inv, i))
    if not equals_on_interval(iterate(h, sn), f, side):
        raise AssertionError("witness root does not reproduce f")
    if not equals_on_interval(iterate(h, rn), g, side):
        raise AssertionError("witness root does not reproduce g")
    return SideWitness(SideKind.SHARED_ROOT, h=h, f_power=sn, g_power=rn)


def _slope_on_side(f: PwlFunction, side: Interval) -> Fraction:
    probe = side.upper - 1 if side.upper is not None else (
        side.lower + 1 if side.lower is not None else _ZERO)
    return f(probe + 1) - f(probe)


def _finite_endpoints(sets: tuple[FixedPointSet, ...]) -> set[Fraction]:
    out: set[Fraction] = set()
    for fps in sets:
        for iv in fps:
            if iv.lower is not None:
                out.add(iv.lower)
            if iv.upper is not None:
                out.add(iv.upper)
    return out


def commuting_witness(f: PwlFunction, g: PwlFunction) -> CommutationWitness | NoWitness:
    """Certificate that ``f`` and ``g`` commute, or the first disagreement.

    Inputs must be min-of-monomials functions with integer slopes >= 1.  On
    each side of the common fixed boundary the certificate is one of: both
    restrictions are powers of a shared increasing map fixing the boundary, a
    pair of linear maps fixing it, identity on that side, or (boundary at
    infinity) a pair of translations.
    """
    _require_poly_no_free_term(f, "f")
    _require_poly_no_free_term(g, "g")
    if not commutes(f, g):
        point = first_disagreement(f, g)
        assert point is not None
        return NoWitness(point)

    endpoints = _finite_endpoints((fixed_points(f), fixed_points(g)))
    if not endpoints:
        if f.is_linear and g.is_linear and f.slopes[0] == 1 and g.slopes[0] == 1:
            return CommutationWitness(None, None, None,
                                      translation=(f(_ZERO), g(_ZERO)))
        # no finite fixed boundary: one unbounded side covers the whole line
        side = Interval.whole()
        return CommutationWitness(None, _side_witness(f, g, side, None), None)
    if len(endpoints) != 1:
        raise AssertionError("commuting pair with distinct fixed boundaries")
    x0 = endpoints.pop()
    left = _side_witness(f, g, Interval.at_most(x0), x0)
    right = _side_witness(f, g, Interval.at_least(x0), x0)
    return CommutationWitness(x0, left, right)


def _check_side(f: PwlFunction, g: PwlFunction, w: SideWitness,
                side: Interval, x0: Fraction | None) -> bool:
    if w.kind is SideKind.IDENTITY:
        ident = identity()
        return (equals_on_interval(f, ident, side)
                and equals_on_interval(g, ident, side))
    if w.kind is SideKind.SHARED_ROOT:
        if w.h is None or w.f_power is None or w.g_power is None:
            return False
        if x0 is not None and w.h(x0) != x0:
            return False
        return (equals_on_interval(iterate(w.h, w.f_power), f, side)
                and equals_on_interval(iterate(w.h, w.g_power), g, side))
    if w.kind is SideKind.LINEAR_PAIR:
        if x0 is None or w.f_slope is None or w.g_slope is None:
            return False
        lf = linear(w.f_slope, x0 * (1 - w.f_slope))
        lg = linear(w.g_slope, x0 * (1 - w.g_slope))
        return equals_on_interval(f, lf, side) and equals_on_interval(g, lg, side)
    return False


def verify_witness(f: PwlFunction, g: PwlFunction,
                   w: CommutationWitness | NoWitness) -> bool:
    """Check a certificate by materializing it: h-powers, linear pairs and
    translations must reproduce ``f`` and ``g`` exactly on their intervals."""
    if isinstance(w, NoWitness):
        return compose(f, g)(w.point) != compose(g, f)(w.point)
    if not commutes(f, g):
        return False
    if w.translation is not None:
        c1, c2 = w.translation
        return f == linear(1, c1) and g == linear(1, c2)
    if w.x0 is None:
        return w.left is not None and w.right is None \
            and _check_side(f, g, w.left, Interval.whole(), None)
    if w.left is None or w.right is None:
        return False
    return (_check_side(f, g, w.left, Interval.at_most(w.x0), w.x0)
            and _check_side(f, g, w.right, Interval.at_least(w.x0), w.x0))


# ---------------------------------------------------------------------------
# a commuting family beyond the certificate's reach

def build_example_pair(t, alpha: int, a: int, b: int) -> tuple[PwlFunction, PwlFunction]:
    """A commuting pair of increasing three-edge integer-slope functions.

    Requires ``a > alpha > 1``, ``b >= 1``, ``a != b`` and ``a | b * alpha``;
    ``t > 0`` locates the roots.  Both functions fix 0 and commute, yet
    generically neither is an iterate of a common map: a power relation
    ``f^k = g^m`` would force ``alpha^k = a^m``.
    """
    t = as_fraction(t)
    if not (isinstance(alpha, int) and isinstance(a, int) and isinstance(b, int)):
        raise ValueError("alpha, a, b must be integers")
    if t <= 0:
        raise ValueError("t must be positive")
    if not a > alpha > 1:
        raise ValueError("need a > alpha > 1")
    if b < 1:
        raise ValueError("need b >= 1")
    if a == b:
        raise ValueError("need a != b")
    if (b * alpha) % a != 0:
        raise ValueError("need a | b * alpha")
    u, v, w = alpha * t, a * t, alpha * a * t
    g = PwlFunction((u, w), (Fraction(a), Fraction(b), Fraction(a)), (u, a * u))
    f = PwlFunction((v, w), (Fraction(alpha), Fraction(b * alpha, a), Fraction(alpha)),
                    (v, alpha * v))
    return f, g
