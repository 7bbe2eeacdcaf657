"""tropfn: exact min-plus piecewise-linear function algebra.

Library layout:

- :mod:`tropfn.pwl` -- canonical piecewise-linear functions and their algebra
  (min/max, add/sub, compose, iterate, invert, roots, classification, blocks).
- :mod:`tropfn.decompose` -- factorization into binomial/trinomial composants,
  including the complete-decomposability criterion for integer slopes.
- :mod:`tropfn.commute` -- commutation test and structural certificates for
  increasing min-plus polynomials, plus fixed-point machinery.
- :mod:`tropfn.parametrize` -- polygonal lines in Q^n and their piecewise-linear
  parametrizations.
- :mod:`tropfn.cli` -- command-line front end with exact-rational documents.
"""

from .pwl import (
    Block,
    FunctionClass,
    FunctionTag,
    Interval,
    MonomialForm,
    PwlFunction,
    add,
    block_count,
    blocks,
    classify,
    compose,
    constant,
    equals,
    equals_on_interval,
    from_monomials,
    identity,
    inverse,
    iterate,
    linear,
    negate,
    normalize,
    roots,
    sub,
    tropical_max,
    tropical_min,
)

__version__ = "0.1.0"
