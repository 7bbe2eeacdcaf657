"""Exact-rational text documents for functions, lines, and results.

Every number travels as a string ``'p'`` or ``'p/q'`` in lowest terms with a
positive denominator; ``'inf'`` appears only where the schema allows it.
Floating-point literals anywhere in a document are rejected, as are
non-canonical rationals such as ``'4/2'`` or ``'3/1'``.  Serialization is
deterministic (sorted keys, canonical strings), so identical inputs yield
byte-identical documents.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from math import gcd
from typing import Any

from .commute import CommutationWitness, NoWitness, SideKind, SideWitness
from .decompose import Composant, ComposantKind, Decomposition
from .parametrize import Parametrization, ParametrizationKind, PolygonalLine
from .pwl import MonomialForm, PwlFunction, from_monomials
from .rational import fmt

__all__ = [
    "DocumentError",
    "FORMAT_VERSION",
    "parse_rational",
    "parse_function",
    "serialize_function",
    "function_to_doc",
    "doc_to_function",
    "polyline_to_doc",
    "doc_to_polyline",
    "decomposition_to_doc",
    "witness_to_doc",
    "parametrization_to_doc",
    "doc_to_decomposition",
    "doc_to_parametrization",
    "loads_document",
    "dumps_document",
    "digest",
]

FORMAT_VERSION = 1

_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/([1-9][0-9]*))?$")


class DocumentError(ValueError):
    """Malformed or non-canonical document content."""


def parse_rational(text: Any) -> Fraction:
    """Parse ``'p'`` or ``'p/q'`` in lowest terms; anything else is an error."""
    if not isinstance(text, str):
        raise DocumentError(f"rational values must be strings, got {text!r}")
    if not _RATIONAL_RE.match(text):
        raise DocumentError(f"not an exact rational literal: {text!r}")
    if "/" in text:
        num_s, den_s = text.split("/")
        num, den = int(num_s), int(den_s)
        if den == 1 or gcd(abs(num), den) != 1:
            raise DocumentError(f"rational not in lowest terms: {text!r}")
        return Fraction(num, den)
    if text == "-0":
        raise DocumentError("negative zero is not canonical")
    return Fraction(int(text))


def _reject_float(value: str) -> None:
    raise DocumentError(f"floating-point literals are rejected: {value!r}")


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed document: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _require(doc: dict, key: str) -> Any:
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    return doc[key]


# ---------------------------------------------------------------------------
# functions

def function_to_doc(f: PwlFunction) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "type": "function",
        "representation": "pwl",
        "breakpoints": [fmt(b) for b in f.breakpoints],
        "slopes": [fmt(s) for s in f.slopes],
        "anchor": {"x": fmt(f.anchor[0]), "value": fmt(f.anchor[1])},
    }


def doc_to_function(doc: dict) -> PwlFunction:
    if _require(doc, "type") != "function":
        raise DocumentError("expected a function document")
    rep = _require(doc, "representation")
    try:
        if rep == "pwl":
            anchor = _require(doc, "anchor")
            return PwlFunction(
                tuple(parse_rational(b) for b in _require(doc, "breakpoints")),
                tuple(parse_rational(s) for s in _require(doc, "slopes")),
                (parse_rational(_require(anchor, "x")),
                 parse_rational(_require(anchor, "value"))),
            )
        if rep == "monomials":
            mode = _require(doc, "mode")
            terms = []
            for term in _require(doc, "terms"):
                const = _require(term, "constant")
                terms.append((parse_rational(_require(term, "slope")),
                              None if const == "inf" else parse_rational(const)))
            return from_monomials(MonomialForm(terms), mode)
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc
    raise DocumentError(f"unknown representation {rep!r}")


def serialize_function(f: PwlFunction) -> str:
    return dumps_document(function_to_doc(f))


def parse_function(text: str) -> PwlFunction:
    return doc_to_function(loads_document(text))


# ---------------------------------------------------------------------------
# polygonal lines

def polyline_to_doc(line: PolygonalLine) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "type": "polyline",
        "vertices": [[fmt(x) for x in v] for v in line.vertices],
        "ray_in": [fmt(x) for x in line.ray_in],
        "ray_out": [fmt(x) for x in line.ray_out],
    }


def doc_to_polyline(doc: dict) -> PolygonalLine:
    if _require(doc, "type") != "polyline":
        raise DocumentError("expected a polyline document")
    try:
        return PolygonalLine(
            tuple(tuple(parse_rational(x) for x in v) for v in _require(doc, "vertices")),
            tuple(parse_rational(x) for x in _require(doc, "ray_in")),
            tuple(parse_rational(x) for x in _require(doc, "ray_out")),
        )
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc


# ---------------------------------------------------------------------------
# results

def decomposition_to_doc(d: Decomposition) -> dict:
    return {
        "type": "decomposition",
        "negated": d.negated,
        "step_count": d.step_count,
        "counts": d.counts,
        "composants": [
            {
                "kind": c.kind.value,
                "degenerate": c.degenerate,
                "function": function_to_doc(c.function),
            }
            for c in d.composants
        ],
    }


def doc_to_decomposition(doc: dict) -> Decomposition:
    if _require(doc, "type") != "decomposition":
        raise DocumentError("expected a decomposition document")
    comps = []
    kinds = {k.value: k for k in ComposantKind}
    for entry in _require(doc, "composants"):
        kind = _require(entry, "kind")
        if kind not in kinds:
            raise DocumentError(f"unknown composant kind {kind!r}")
        comps.append(Composant(doc_to_function(_require(entry, "function")),
                               kinds[kind], bool(entry.get("degenerate", False))))
    return Decomposition(tuple(comps), bool(doc.get("negated", False)),
                         int(doc.get("step_count", 0)))


def _side_to_doc(side: SideWitness | None) -> dict | None:
    if side is None:
        return None
    out: dict[str, Any] = {"kind": side.kind.value}
    if side.kind is SideKind.SHARED_ROOT:
        out["h"] = function_to_doc(side.h)
        out["f_power"] = side.f_power
        out["g_power"] = side.g_power
    elif side.kind is SideKind.LINEAR_PAIR:
        out["f_slope"] = fmt(side.f_slope)
        out["g_slope"] = fmt(side.g_slope)
    return out


def witness_to_doc(w: CommutationWitness | NoWitness) -> dict:
    if isinstance(w, NoWitness):
        return {
            "type": "witness",
            "commutes": False,
            "disagreement_at": fmt(w.point),
        }
    return {
        "type": "witness",
        "commutes": True,
        "x0": "inf" if w.x0 is None else fmt(w.x0),
        "translation": None if w.translation is None else
            {"c1": fmt(w.translation[0]), "c2": fmt(w.translation[1])},
        "left": _side_to_doc(w.left),
        "right": _side_to_doc(w.right),
    }


def parametrization_to_doc(p: Parametrization) -> dict:
    return {
        "type": "parametrization",
        "kind": p.kind.value,
        "functions": [function_to_doc(f) for f in p.functions],
    }


def doc_to_parametrization(doc: dict) -> Parametrization:
    if _require(doc, "type") != "parametrization":
        raise DocumentError("expected a parametrization document")
    kinds = {k.value: k for k in ParametrizationKind}
    kind = _require(doc, "kind")
    if kind not in kinds:
        raise DocumentError(f"unknown parametrization kind {kind!r}")
    fns = tuple(doc_to_function(d) for d in _require(doc, "functions"))
    return Parametrization(fns, kinds[kind])
