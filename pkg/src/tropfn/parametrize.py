"""Polygonal lines in Q^n and their piecewise-linear parametrizations.

A polygonal line is a chain of vertices with an incoming and an outgoing
unbounded ray; each bounded interval's slope vector is the vertex difference
and the ray vectors are fixed up to a positive factor (normalized here to
primitive integer vectors).  Slope vectors point in the direction of
increasing parameter.

Every line admits a parametrization by integer-slope coordinate functions
with one shared root per vertex.  Stricter shapes exist exactly when the
slope matrix allows a positive rescaling ``c_i`` making every coordinate's
slope sequence non-increasing (Laurent: integers; polynomial: nonnegative
integers); the construction picks each ``c_{i+1}`` maximal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .pwl import PwlFunction, normalize
from .rational import as_fraction, lcm_denominators

__all__ = [
    "PolygonalLine",
    "ParametrizationKind",
    "Parametrization",
    "slope_vectors",
    "can_parametrize_polynomial",
    "can_parametrize_laurent",
    "parametrize_rational",
    "parametrize_polynomial",
    "parametrize_laurent",
    "verify_parametrization",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

Vector = tuple[Fraction, ...]


def _as_vector(v) -> Vector:
    return tuple(as_fraction(x) for x in v)


def _primitive(v: Vector) -> Vector:
    """Scale a nonzero rational vector by a positive factor to a primitive
    integer vector (content 1)."""
    den = lcm_denominators(v)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x, g) for x in ints)


def _positively_proportional(u: Vector, v: Vector) -> bool:
    pivot = next((j for j, x in enumerate(v) if x != 0), None)
    if pivot is None:
        return all(x == 0 for x in u)
    if u[pivot] == 0:
        return False
    lam = u[pivot] / v[pivot]
    return lam > 0 and all(x == lam * y for x, y in zip(u, v))


@dataclass(frozen=True)
class PolygonalLine:
    """Vertices ``v_1 .. v_k`` in Q^n plus primitive ray direction vectors.

    ``ray_in`` is the direction of the unbounded interval ending at ``v_1``
    (pointing toward it), ``ray_out`` the direction of the interval leaving
    ``v_k``.  No vertex is discardable: adjacent interval vectors are never
    positively proportional.
    """

    vertices: tuple[Vector, ...]
    ray_in: Vector
    ray_out: Vector

    def __post_init__(self) -> None:
        vertices = tuple(_as_vector(v) for v in self.vertices)
        if not vertices:
            raise ValueError("a polygonal line needs at least one vertex")
        n = len(vertices[0])
        if n == 0:
            raise ValueError("ambient dimension must be positive")
        if any(len(v) != n for v in vertices):
            raise ValueError("all vertices must share one dimension")
        ray_in = _as_vector(self.ray_in)
        ray_out = _as_vector(self.ray_out)
        if len(ray_in) != n or len(ray_out) != n:
            raise ValueError("ray vectors must match the vertex dimension")
        if all(x == 0 for x in ray_in) or all(x == 0 for x in ray_out):
            raise ValueError("ray vectors must be nonzero")
        ray_in = _primitive(ray_in)
        ray_out = _primitive(ray_out)
        for a, b in zip(vertices, vertices[1:]):
            if a == b:
                raise ValueError("consecutive vertices must be distinct")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "ray_in", ray_in)
        object.__setattr__(self, "ray_out", ray_out)
        vecs = slope_vectors(self)
        for u, v in zip(vecs, vecs[1:]):
            if _positively_proportional(v, u):
                raise ValueError("discardable vertex: adjacent interval "
                                 "directions are positively proportional")

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])


def slope_vectors(line: PolygonalLine) -> tuple[Vector, ...]:
    """Direction vectors of intervals 0..k: ray in, vertex differences, ray out."""
    mids = tuple(tuple(b - a for a, b in zip(u, v))
                 for u, v in zip(line.vertices, line.vertices[1:]))
    return (line.ray_in,) + mids + (line.ray_out,)


class ParametrizationKind(Enum):
    RATIONAL = "rational"
    LAURENT = "laurent"
    POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class Parametrization:
    functions: tuple[PwlFunction, ...]
    kind: ParametrizationKind


# ---------------------------------------------------------------------------
# existence criteria

def can_parametrize_polynomial(line: PolygonalLine) -> bool:
    """All slope-vector entries nonnegative, and a zero never turns positive
    again further along the line."""
    vecs = slope_vectors(line)
    n = line.dimension
    for j in range(n):
        seen_zero = False
        for vec in vecs:
            if vec[j] < 0:
                return False
            if vec[j] == 0:
                seen_zero = True
            elif seen_zero:
                return False
    return True


def can_parametrize_laurent(line: PolygonalLine) -> bool:
    """Per coordinate the sign may only degrade along the line, and ratios of
    positive to negative entries must not decrease between consecutive
    intervals."""
    vecs = slope_vectors(line)
    n = line.dimension
    for cur, nxt in zip(vecs, vecs[1:]):
        for j in range(n):
            if cur[j] < 0 and not nxt[j] < 0:
                return False
            if nxt[j] > 0 and not cur[j] > 0:
                return False
        for j0 in range(n):
            if not (cur[j0] > 0 and nxt[j0] > 0):
                continue
            for j in range(n):
                if j == j0 or not (cur[j] < 0 and nxt[j] < 0):
                    continue
                if cur[j0] / cur[j] > nxt[j0] / nxt[j]:
                    return False
    return True


# ---------------------------------------------------------------------------
# constructions

def _functions_from_scales(line: PolygonalLine, scales: list[Fraction],
                           kind: ParametrizationKind) -> Parametrization:
    """Coordinate functions with slopes ``M * c_i * a_{i,j}``.

    Interval ``i`` gets parameter length ``1 / (M * c_i)`` so that slope times
    length reproduces the vertex difference exactly; with unit scales the
    roots sit at ``1/M, ..., k/M``.
    """
    vecs = slope_vectors(line)
    k = len(line.vertices)
    n = line.dimension
    scaled = [tuple(scales[i] * vecs[i][j] for j in range(n)) for i in range(k + 1)]
    m = lcm_denominators(x for vec in scaled for x in vec)
    root = [Fraction(1, m)]
    for i in range(1, k):
        root.append(root[-1] + Fraction(1, m) / scales[i])
    fns = []
    for j in range(n):
        slopes = [m * scaled[i][j] for i in range(k + 1)]
        fns.append(normalize(root, slopes, (root[0], line.vertices[0][j])))
    return Parametrization(tuple(fns), kind)


def parametrize_rational(line: PolygonalLine) -> Parametrization:
    """Integer-slope parametrization; always exists."""
    scales = [_ONE] * (len(line.vertices) + 1)
    return _functions_from_scales(line, scales, ParametrizationKind.RATIONAL)


def _maximal_scales(line: PolygonalLine) -> list[Fraction]:
    """Positive factors ``c_i`` (c_0 = 1, each next maximal) making every
    coordinate's scaled slope sequence non-increasing."""
    vecs = slope_vectors(line)
    n = line.dimension
    scales = [_ONE]
    for cur, nxt in zip(vecs, vecs[1:]):
        c = scales[-1]
        uppers = [c * cur[j] / nxt[j] for j in range(n) if cur[j] > 0 and nxt[j] > 0]
        lowers = [c * cur[j] / nxt[j] for j in range(n) if cur[j] < 0 and nxt[j] < 0]
        if uppers:
            nxt_c = min(uppers)
            if lowers and max(lowers) > nxt_c:
                raise AssertionError("scaling constraints are infeasible")
        elif lowers:
            nxt_c = max(lowers)
        else:
            nxt_c = c
        scales.append(nxt_c)
    return scales


def parametrize_polynomial(line: PolygonalLine) -> Parametrization:
    """Parametrization by functions with strictly decreasing nonnegative
    integer slopes; requires :func:`can_parametrize_polynomial`."""
    if not can_parametrize_polynomial(line):
        raise ValueError("line admits no min-of-monomials parametrization with "
                         "nonnegative slopes (criterion fails)")
    return _functions_from_scales(line, _maximal_scales(line),
                                  ParametrizationKind.POLYNOMIAL)


def parametrize_laurent(line: PolygonalLine) -> Parametrization:
    """Parametrization by functions with strictly decreasing integer slopes;
    requires :func:`can_parametrize_laurent`."""
    if not can_parametrize_laurent(line):
        raise ValueError("line admits no parametrization with non-increasing "
                         "integer slope sequences (criterion fails)")
    return _functions_from_scales(line, _maximal_scales(line),
                                  ParametrizationKind.LAURENT)


# ---------------------------------------------------------------------------
# verification

def verify_parametrization(line: PolygonalLine, par: Parametrization) -> bool:
    """True iff the joint map traverses the line bijectively: the common roots
    hit the vertices in order and every interval's joint slope vector is a
    positive multiple of the line's direction for that interval."""
    fns = par.functions
    if len(fns) != line.dimension:
        return False
    pts = sorted({b for f in fns for b in f.breakpoints})
    if len(pts) != len(line.vertices):
        return False
    for t, vertex in zip(pts, line.vertices):
        if tuple(f(t) for f in fns) != vertex:
            return False
    vecs = slope_vectors(line)
    if not pts:
        return False
    probes = [pts[0] - 1] + [t for t in pts] + [pts[-1] + 1]
    for i in range(len(pts) + 1):
        lo = probes[i]
        hi = probes[i + 1]
        joint = tuple(f(hi) - f(lo) for f in fns)
        if all(x == 0 for x in joint):
            return False
        if not _positively_proportional(joint, vecs[i]):
            return False
    return True
