"""Acceptance suite: one test per criterion, each printing a pass line.

Every assertion is exact (tolerance zero); wall-clock budgets are asserted
per criterion.  Two published identities are provably off and are kept as
strict expected failures with the corrected forms asserted in the passing
tests; the analysis lives in the project notes:

* the slope-(+-1) tent gains two roots per iteration (2k - 1), not 2^k - 1;
  the exponential law holds for the expanding slope-(+-2) tent;
* a factorization's non-monotone weight 2*k3 + k2 equals the number of sign
  alternations of the nonzero slopes, which is the block count minus one,
  and the root budget's upper bound needs 2*k0 (plateaus carry two roots).
"""

import random
import time
from fractions import Fraction as F

import pytest

from tropfn import (
    Interval,
    block_count,
    compose,
    from_monomials,
    identity,
    iterate,
    normalize,
    tropical_min,
    add,
    sub,
)
from tropfn.commute import (
    CommutationWitness,
    build_example_pair,
    commutes,
    commuting_witness,
    shared_power,
    verify_witness,
)
from tropfn.decompose import (
    ComposantKind,
    complete_decomposability,
    decompose_algebraic_polynomial,
    decompose_algebraic_rational,
    decompose_complete,
    decompose_monotone_algebraic,
    decompose_monotone_integer,
    verify,
)
from tropfn.parametrize import (
    PolygonalLine,
    Parametrization,
    ParametrizationKind,
    can_parametrize_laurent,
    can_parametrize_polynomial,
    parametrize_laurent,
    parametrize_polynomial,
    parametrize_rational,
    verify_parametrization,
)
from tropfn.pwl import PwlFunction
from support import (
    decomposable_by_search,
    rand_algebraic_polynomial,
    rand_fixing_poly,
    rand_monotone,
    rand_pwl,
)
from test_parametrize import random_line


def _report(num: int, detail: str, elapsed: float, budget: float) -> None:
    print(f"criterion {num}: PASS  ({detail}; {elapsed:.2f}s < {budget:.0f}s)")


# ---------------------------------------------------------------------------
# 1. iteration root growth


def test_criterion_1_iteration_root_growth():
    budget = 5.0
    start = time.perf_counter()
    expanding = from_monomials([(2, 1), (-2, 1)])
    flat = from_monomials([(1, 1), (-1, 1)])
    e = identity()
    f = identity()
    for k in range(1, 13):
        e = compose(expanding, e)
        f = compose(flat, f)
        assert len(e.breakpoints) == 2 ** k - 1
        assert len(f.breakpoints) == 2 * k - 1
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(1, "expanding tent roots = 2^k - 1 for k = 1..12; "
               "slope-1 tent roots = 2k - 1", elapsed, budget)


@pytest.mark.xfail(strict=True,
                   reason="the slope-(+-1) tent gains exactly two roots per "
                          "iteration; 2^k - 1 requires expanding slopes "
                          "(see notes)")
def test_criterion_1_literal_claim():
    flat = from_monomials([(1, 1), (-1, 1)])
    for k in range(1, 13):
        assert len(iterate(flat, k).breakpoints) == 2 ** k - 1


# ---------------------------------------------------------------------------
# 2. root-count bounds


def test_criterion_2_root_count_bounds():
    budget = 10.0
    start = time.perf_counter()
    rng = random.Random(20_2)

    def rand_convex():
        terms = [(F(rng.randint(-6, 6), rng.randint(1, 3)),
                  F(rng.randint(-9, 9), rng.randint(1, 3)))
                 for _ in range(rng.randint(1, 9))]
        return from_monomials(terms)

    for i in range(1000):
        if i % 2 == 0:
            f = rand_pwl(rng, rng.randint(0, 8))
            g = rand_pwl(rng, rng.randint(0, 8))
        elif i % 4 == 1:
            f = rand_monotone(rng, rng.randint(0, 8))
            g = rand_monotone(rng, rng.randint(0, 8))
        else:
            f = rand_convex()
            g = rand_convex()
        p, q = len(f.breakpoints), len(g.breakpoints)
        assert len(add(f, g).breakpoints) <= p + q
        assert len(sub(f, g).breakpoints) <= p + q
        c = compose(f, g)
        assert len(c.breakpoints) <= p * q + p + q
        assert set(c.slopes) <= {a * b for a in f.slopes for b in g.slopes}
        if all(s > 0 for s in f.slopes) and all(s > 0 for s in g.slopes):
            assert len(c.breakpoints) <= p + q
        m = tropical_min(f, g)
        assert len(m.breakpoints) <= 2 * (p + q) + 1
        if i % 4 == 3:
            # convex pair: the minimum is a min of p + q + 2 lines
            assert len(m.breakpoints) <= p + q + 1
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(2, "1000 pairs: add/sub <= p+q, monotone compose <= p+q, "
               "compose <= pq+p+q, slopes within products, convex min <= p+q+1",
            elapsed, budget)


@pytest.mark.xfail(strict=True,
                   reason="min(f, g) can exceed p + q + 1 roots for "
                          "non-convex inputs (see notes)")
def test_criterion_2_literal_min_bound():
    rng = random.Random(11)
    for _ in range(200):
        f = rand_pwl(rng, rng.randint(0, 4))
        g = rand_pwl(rng, rng.randint(0, 4))
        m = tropical_min(f, g)
        assert len(m.breakpoints) <= len(f.breakpoints) + len(g.breakpoints) + 1


# ---------------------------------------------------------------------------
# 3. one binomial per root


def test_criterion_3_binomial_factorizations():
    budget = 30.0
    start = time.perf_counter()
    rng = random.Random(20_3)
    for _ in range(500):
        f = rand_algebraic_polynomial(rng, rng.randint(1, 50))
        d = decompose_algebraic_polynomial(f)
        assert len(d.composants) == len(f.breakpoints)
        assert all(c.kind is ComposantKind.ALGEBRAIC_BINOMIAL
                   and len(c.function.breakpoints) == 1 for c in d.composants)
        assert verify(d, f)
    for _ in range(500):
        f = rand_monotone(rng, rng.randint(1, 50))
        d = decompose_monotone_algebraic(f)
        assert len(d.composants) == len(f.breakpoints)
        assert all(c.kind is ComposantKind.MONOTONE_BINOMIAL
                   and len(c.function.breakpoints) == 1 for c in d.composants)
        assert verify(d, f)
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(3, "500 + 500 functions with up to 50 roots factor into exactly "
               "one binomial per root, recomposition exact", elapsed, budget)


# ---------------------------------------------------------------------------
# 4. factorization count identities


def test_criterion_4_count_identities():
    budget = 60.0
    start = time.perf_counter()
    rng = random.Random(20_4)
    for _ in range(500):
        f = rand_pwl(rng, rng.randint(0, 39), nonzero_ends=True)
        d = decompose_algebraic_rational(f)
        nonzero = sum(1 for s in f.slopes if s != 0)
        zero = sum(1 for s in f.slopes if s == 0)
        n_roots = len(f.breakpoints)
        assert 2 * d.k3 + d.k2 == max(block_count(f) - 1, 0)
        assert d.k0 == zero
        assert d.k1 + d.k2 + 2 * d.k3 <= nonzero
        assert d.k1 + 2 * d.k0 <= n_roots <= 2 * d.k3 + d.k2 + d.k1 + 2 * d.k0
        assert verify(d, f)
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(4, "500 functions with up to 40 edges: 2k3+k2 = blocks - 1, "
               "k0 = zero edges, k1+k2+2k3 <= nonzero edges, "
               "k1+2k0 <= roots <= 2k3+k2+k1+2k0, recomposition exact",
            elapsed, budget)


@pytest.mark.xfail(strict=True,
                   reason="2k3 + k2 equals the sign alternation count "
                          "(blocks - 1): the final monotone block consumes no "
                          "non-monotone composant, and a plateau carries two "
                          "roots, so the published forms are off (see notes)")
def test_criterion_4_literal_identities():
    f = normalize([0, 1, 2, 3], [1, -1, 1, 0, 2], (0, 0))
    d = decompose_algebraic_rational(f)
    assert verify(d, f)
    ok_blocks = (2 * d.k3 + d.k2 == block_count(f))
    ok_budget = (len(f.breakpoints) <= 2 * d.k3 + d.k2 + d.k1 + d.k0)
    assert ok_blocks and ok_budget


# ---------------------------------------------------------------------------
# 5. complete decomposability against brute force


def test_criterion_5_divisibility_oracle():
    budget = 60.0
    start = time.perf_counter()
    tuples = []
    for n in range(0, 4):
        stack = [(a,) for a in range(1, 13)]
        for _ in range(n):
            stack = [t + (a,) for t in stack for a in range(1, 13) if a != t[-1]]
        tuples.extend(stack)
    checked_true = checked_false = 0
    for slopes in tuples:
        ok, qs = complete_decomposability(slopes)
        assert ok == decomposable_by_search(slopes), slopes
        if len(slopes) == 3:
            assert ok == ((slopes[0] * slopes[2]) % slopes[1] == 0), slopes
        if ok and len(slopes) > 1:
            ts = list(range(len(slopes) - 1))
            f = PwlFunction(tuple(F(t) for t in ts),
                            tuple(F(s) for s in slopes), (F(0), F(0)))
            d = decompose_complete(f)
            assert verify(d, f), slopes
            checked_true += 1
        elif not ok:
            checked_false += 1
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(5, f"all {len(tuples)} slope tuples (entries <= 12, length <= 4): "
               f"criterion == exhaustive search; {checked_true} constructions "
               f"verified, {checked_false} impossibilities confirmed",
            elapsed, budget)


# ---------------------------------------------------------------------------
# 6. commutation


def test_criterion_6_commutation():
    budget = 30.0
    start = time.perf_counter()
    rng = random.Random(20_6)
    done = 0
    while done < 200:
        h = rand_fixing_poly(rng, rng.randint(0, 2))
        k, m = rng.randint(0, 3), rng.randint(1, 3)
        f, g = iterate(h, k), iterate(h, m)
        assert commutes(f, g)
        w = commuting_witness(f, g)
        assert isinstance(w, CommutationWitness)
        assert verify_witness(f, g, w)
        done += 1
    grid = [(F(1), 2, 6, 3), (F(1), 2, 4, 2), (F(1, 2), 2, 4, 6),
            (F(2), 3, 9, 3), (F(1), 2, 6, 9), (F(1), 3, 6, 2),
            (F(3), 2, 8, 4), (F(1), 4, 8, 2)]
    for t, alpha, a, b in grid:
        f, g = build_example_pair(t, alpha, a, b)
        assert commutes(f, g)
        c = compose(f, g)
        assert c == compose(g, f)
        assert c.slopes == (F(alpha * a), F(alpha * b), F(alpha * a))
        assert c.breakpoints == (t, alpha * a * t)
        relation = {(k, m) for k in range(1, 21) for m in range(1, 21)
                    if alpha ** k == a ** m}
        found = shared_power(f, g, 20, Interval.at_least(0))
        if not relation:
            assert found is None, (t, alpha, a, b)
        else:
            assert found is not None
            assert alpha ** found[0] == a ** found[1]
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(6, "200 iterate pairs certified exactly; three-edge family grid "
               "commutes with slopes (aa', ab', aa') and roots (t, a'at); "
               "power-relation search matches the exponent arithmetic",
            elapsed, budget)


# ---------------------------------------------------------------------------
# 7. parametrization


def test_criterion_7_parametrization():
    budget = 30.0
    start = time.perf_counter()
    axes = PolygonalLine(((F(0), F(0)),), (-1, 0), (0, 1))
    reference = Parametrization(
        (PwlFunction((F(0),), (F(-1), F(0)), (F(0), F(0))),
         PwlFunction((F(0),), (F(0), F(1)), (F(0), F(0)))),
        ParametrizationKind.RATIONAL)
    assert verify_parametrization(axes, reference)
    assert not can_parametrize_polynomial(axes)
    assert not can_parametrize_laurent(axes)
    rng = random.Random(20_7)
    for _ in range(500):
        shape = rng.choice(["any", "any", "polynomial", "descending"])
        line = random_line(rng, rng.randint(1, 4), rng.randint(1, 6), shape)
        par = parametrize_rational(line)
        assert verify_parametrization(line, par)
        assert all(s.denominator == 1 for f in par.functions for s in f.slopes)
        if can_parametrize_polynomial(line):
            assert can_parametrize_laurent(line)
            assert verify_parametrization(line, parametrize_polynomial(line))
        else:
            with pytest.raises(ValueError):
                parametrize_polynomial(line)
        if can_parametrize_laurent(line):
            assert verify_parametrization(line, parametrize_laurent(line))
        else:
            with pytest.raises(ValueError):
                parametrize_laurent(line)
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(7, "reference parametrization of the axes line verifies, both "
               "strict criteria reject it; 500 random lines verify with "
               "criterion/construction coherence", elapsed, budget)


# ---------------------------------------------------------------------------
# 8. scale


def test_criterion_8_large_monotone_factorization():
    budget = 10.0
    start = time.perf_counter()
    rng = random.Random(20_8)
    edges = 10_000
    slopes = [rng.randint(1, 9)]
    while len(slopes) < edges:
        s = rng.randint(1, 9)
        if s != slopes[-1]:
            slopes.append(s)
    f = normalize(range(edges - 1), slopes, (0, 0))
    d = decompose_monotone_integer(f)
    assert len(d.composants) <= len(f.breakpoints)
    assert d.step_count <= 4 * edges * edges
    # spot-check the factorization by feeding points through the chain
    for x in [F(p) + F(1, 3) for p in rng.sample(range(-10, edges), 12)]:
        value = x
        for comp in reversed(d.composants):
            value = comp.function(value)
        assert value == f(x)
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(8, f"{edges}-edge monotone factorization: "
               f"{len(d.composants)} composants in {d.step_count} steps "
               f"(< 4 * edges^2)", elapsed, budget)
