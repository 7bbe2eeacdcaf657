"""Shared test helpers: raw evaluators, random corpora, independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from tropfn import PwlFunction, add, compose, normalize


def raw_eval(breakpoints, slopes, anchor, x):
    """Independent piecewise evaluator over raw (non-canonical) data."""
    breakpoints = [Fraction(b) for b in breakpoints]
    slopes = [Fraction(s) for s in slopes]
    ax, av = Fraction(anchor[0]), Fraction(anchor[1])
    x = Fraction(x)

    def val(p):
        # integrate slopes stepwise from the anchor to p
        if p == ax:
            return av
        lo, hi = min(ax, p), max(ax, p)
        cuts = [lo] + [b for b in breakpoints if lo < b < hi] + [hi]
        total = Fraction(0)
        for a, b in zip(cuts, cuts[1:]):
            mid = (a + b) / 2
            idx = sum(1 for bp in breakpoints if bp <= mid)
            total += slopes[idx] * (b - a)
        return av + total if p > ax else av - total

    return val(x)


def sample_points(*fns):
    """Breakpoints, midpoints between them, and sentinels one beyond each end."""
    pts = sorted({b for f in fns for b in f.breakpoints})
    if not pts:
        return [Fraction(-1), Fraction(0), Fraction(1)]
    out = [pts[0] - 1]
    for a, b in zip(pts, pts[1:]):
        out.append(a)
        out.append((a + b) / 2)
    out.append(pts[-1])
    out.append(pts[-1] + 1)
    return out


def rand_fraction(rng: random.Random, lo=-8, hi=8, max_den=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_breakpoints(rng: random.Random, k: int) -> list[Fraction]:
    pts: set[Fraction] = set()
    while len(pts) < k:
        pts.add(rand_fraction(rng, -30, 30, 4))
    return sorted(pts)


def _distinct_adjacent(rng, k, draw):
    slopes = [draw()]
    while len(slopes) < k:
        s = draw()
        if s != slopes[-1]:
            slopes.append(s)
    return slopes


def rand_pwl(rng: random.Random, n_roots: int, *, integer=False,
             allow_zero=True, nonzero_ends=False) -> PwlFunction:
    """Random canonical function with ``n_roots`` roots."""

    def draw():
        if integer:
            return Fraction(rng.randint(-5, 5))
        return rand_fraction(rng, -6, 6, 5)

    while True:
        slopes = _distinct_adjacent(rng, n_roots + 1, draw)
        if not allow_zero and any(s == 0 for s in slopes):
            continue
        if nonzero_ends and (slopes[0] == 0 or slopes[-1] == 0):
            continue
        break
    bps = rand_breakpoints(rng, n_roots)
    anchor_x = bps[0] if bps else Fraction(0)
    return PwlFunction(tuple(bps), tuple(slopes), (anchor_x, rand_fraction(rng)))


def rand_monotone(rng: random.Random, n_roots: int, *, integer=False) -> PwlFunction:
    def draw():
        if integer:
            return Fraction(rng.randint(1, 9))
        return Fraction(rng.randint(1, 12), rng.randint(1, 5))

    slopes = _distinct_adjacent(rng, n_roots + 1, draw)
    bps = rand_breakpoints(rng, n_roots)
    anchor_x = bps[0] if bps else Fraction(0)
    return PwlFunction(tuple(bps), tuple(slopes), (anchor_x, rand_fraction(rng)))


def rand_algebraic_polynomial(rng: random.Random, n_roots: int,
                              *, allow_free_term=True) -> PwlFunction:
    """Strictly decreasing rational slopes, all nonnegative."""
    steps = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(n_roots)]
    low = Fraction(0) if (allow_free_term and rng.random() < 0.4) else \
        Fraction(rng.randint(1, 4), rng.randint(1, 3))
    slopes = [low]
    for st in steps:
        slopes.append(slopes[-1] + st)
    slopes.reverse()
    bps = rand_breakpoints(rng, n_roots)
    anchor_x = bps[0] if bps else Fraction(0)
    return PwlFunction(tuple(bps), tuple(slopes), (anchor_x, rand_fraction(rng)))


def rand_trop_poly_no_free_term(rng: random.Random, n_roots: int) -> PwlFunction:
    """Strictly decreasing integer slopes, all >= 1."""
    steps = [rng.randint(1, 3) for _ in range(n_roots)]
    slopes = [Fraction(rng.randint(1, 3))]
    for st in steps:
        slopes.append(slopes[-1] + st)
    slopes.reverse()
    bps = rand_breakpoints(rng, n_roots)
    anchor_x = bps[0] if bps else Fraction(0)
    return PwlFunction(tuple(bps), tuple(slopes), (anchor_x, rand_fraction(rng)))


def rand_fixing_poly(rng: random.Random, n_roots: int) -> PwlFunction:
    """Random min-of-monomials function, integer slopes >= 1, strictly
    decreasing, anchored to fix its first breakpoint (or 0 when linear)."""
    steps = [rng.randint(1, 3) for _ in range(n_roots)]
    slopes = [Fraction(rng.randint(1, 3))]
    for st in steps:
        slopes.append(slopes[-1] + st)
    slopes.reverse()
    bps = rand_breakpoints(rng, n_roots)
    x0 = bps[0] if bps else Fraction(0)
    return PwlFunction(tuple(bps), tuple(slopes), (x0, x0))


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def ordered_factorizations(n: int, parts: int):
    """All ordered tuples of ``parts`` positive integers with product ``n``."""
    if parts == 1:
        yield (n,)
        return
    for d in divisors(n):
        for rest in ordered_factorizations(n // d, parts - 1):
            yield (d,) + rest


def _binomial_composition_matches(slopes, bs, cs) -> bool:
    """Place binomials (b_m, c_m) at the forced root preimages and test the
    recomposition against the canonical function with those edge slopes."""
    n = len(slopes) - 1
    ts = [Fraction(i) for i in range(n)]
    f = PwlFunction(tuple(ts), tuple(Fraction(s) for s in slopes),
                    (ts[0], Fraction(0)))
    gs: list[PwlFunction | None] = [None] * (n + 1)
    for m in range(n, 0, -1):
        r = ts[m - 1]
        for j in range(n, m, -1):
            r = gs[j](r)
        gs[m] = PwlFunction((r,), (Fraction(bs[m - 1]), Fraction(cs[m - 1])), (r, r))
    total = gs[n]
    for j in range(n - 1, 0, -1):
        total = compose(gs[j], total)
    delta = f(ts[-1]) - total(ts[-1])
    shifted = PwlFunction(total.breakpoints, total.slopes,
                          (total.anchor[0], total.anchor[1] + delta))
    return shifted == f


def decomposable_by_search(slopes) -> bool:
    """Exhaustive hunt for a composition of one-root increasing binomials
    realizing the given edge slopes: enumerate ordered factorizations of the
    leading slope, force each c from the consecutive slope ratio, and confirm
    geometrically by exact recomposition.  (Longer compositions reduce to
    this: extra factors fold into the binomial at the same switch point.)"""
    n = len(slopes) - 1
    if n == 0:
        return True
    ratios = [Fraction(slopes[i], slopes[i - 1]) for i in range(1, n + 1)]
    for bs in ordered_factorizations(slopes[0], n):
        cs = [b * r for b, r in zip(bs, ratios)]
        if all(c.denominator == 1 and c >= 1 for c in cs):
            if _binomial_composition_matches(slopes, bs, [int(c) for c in cs]):
                return True
    return False


def as_polynomial_difference(f: PwlFunction):
    """Write an integer-slope function as a difference p - q of two functions
    with strictly decreasing nonnegative integer slopes."""
    n = len(f.slopes)
    # q has steeply decreasing slopes so that f + q is decreasing as well
    drop = max(abs(s1 - s0) for s0, s1 in zip(f.slopes, f.slopes[1:])) + 1 if n > 1 else 1
    base = n * drop + max(0, -min(f.slopes)) + 1
    q_slopes = [Fraction(base - i * drop) for i in range(n)]
    q = normalize(f.breakpoints, q_slopes, (f.breakpoints[0] if f.breakpoints else 0, 0))
    p = add(f, q)
    return p, q
