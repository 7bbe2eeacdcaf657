"""Command-line front end.

Inputs are exact-rational JSON documents (path or ``-`` for stdin); every run
prints one self-describing JSON report (except ``plot``, which emits a
delimited table).  Exit codes: 0 success, 1 input error, 2 verification
failure -- a report whose checked result does not verify is a defect, never a
normal outcome.
"""

from __future__ import annotations

import argparse
import sys
from . import commute as _commute
from . import decompose as _decompose
from . import parametrize as _parametrize
from . import pwl as _pwl
from .io import (
    DocumentError,
    FORMAT_VERSION,
    decomposition_to_doc,
    digest,
    doc_to_decomposition,
    doc_to_function,
    doc_to_parametrization,
    doc_to_polyline,
    dumps_document,
    function_to_doc,
    loads_document,
    parametrization_to_doc,
    parse_rational,
    witness_to_doc,
)
from .rational import fmt

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFY_FAILED = 2

_DECOMPOSE_MODES = {
    "algebraic-poly": _decompose.decompose_algebraic_polynomial,
    "monotone-algebraic": _decompose.decompose_monotone_algebraic,
    "algebraic-rational": _decompose.decompose_algebraic_rational,
    "monotone-integer": _decompose.decompose_monotone_integer,
    "integer-rational": _decompose.decompose_integer_rational,
    "complete": _decompose.decompose_complete,
}


class _Input:
    def __init__(self, path: str):
        self.path = path
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
        self.sha256 = digest(data)
        self.doc = loads_document(data.decode("utf-8"))

    def function(self) -> _pwl.PwlFunction:
        return doc_to_function(self.doc)

    def polyline(self) -> _parametrize.PolygonalLine:
        return doc_to_polyline(self.doc)

    def meta(self) -> dict:
        return {"path": self.path, "sha256": self.sha256}


def _report(command: str, inputs: list[_Input], result: dict,
            verified: bool | None, **extra) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "inputs": [i.meta() for i in inputs],
        "result": result,
        "verified": verified,
    }
    doc.update(extra)
    return doc


def _emit(doc: dict) -> int:
    sys.stdout.write(dumps_document(doc))
    if doc.get("verified") is False:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# handlers

def _cmd_eval(args) -> int:
    src = _Input(args.function)
    value = src.function().value_at(parse_rational(args.at))
    return _emit(_report("eval", [src], {"value": fmt(value)}, None,
                         at=args.at))


def _cmd_roots(args) -> int:
    src = _Input(args.function)
    return _emit(_report("roots", [src],
                         {"roots": [fmt(r) for r in src.function().roots]}, None))


def _cmd_classify(args) -> int:
    src = _Input(args.function)
    cls = _pwl.classify(src.function())
    return _emit(_report("classify", [src],
                         {"tag": cls.tag.value, "slopes_integer": cls.slopes_integer},
                         None))


def _cmd_compose(args) -> int:
    outer, inner = _Input(args.outer), _Input(args.inner)
    c = _pwl.compose(outer.function(), inner.function())
    return _emit(_report("compose", [outer, inner],
                         {"function": function_to_doc(c)}, None))


def _cmd_iterate(args) -> int:
    src = _Input(args.function)
    if args.k < 0:
        raise DocumentError("iteration count must be nonnegative")
    it = _pwl.iterate(src.function(), args.k)
    return _emit(_report("iterate", [src], {"function": function_to_doc(it)},
                         None, k=args.k))


def _cmd_invert(args) -> int:
    src = _Input(args.function)
    inv = _pwl.inverse(src.function())
    return _emit(_report("invert", [src], {"function": function_to_doc(inv)}, None))


def _cmd_decompose(args) -> int:
    src = _Input(args.function)
    f = src.function()
    d = _DECOMPOSE_MODES[args.mode](f)
    ok = _decompose.verify(d, f)
    return _emit(_report("decompose", [src],
                         {"decomposition": decomposition_to_doc(d)},
                         ok, mode=args.mode))


def _cmd_complete(args) -> int:
    src = _Input(args.function)
    ok, qs = _decompose.complete_decomposability(src.function().slopes)
    return _emit(_report("complete", [src],
                         {"decomposable": ok, "q": [str(q) for q in qs]}, None))


def _cmd_commute(args) -> int:
    a, b = _Input(args.f), _Input(args.g)
    f, g = a.function(), b.function()
    result: dict = {"commutes": _commute.commutes(f, g)}
    if not result["commutes"]:
        point = _commute.first_disagreement(f, g)
        result["disagreement_at"] = fmt(point)
    return _emit(_report("commute", [a, b], result, None))


def _cmd_witness(args) -> int:
    a, b = _Input(args.f), _Input(args.g)
    f, g = a.function(), b.function()
    w = _commute.commuting_witness(f, g)
    ok = _commute.verify_witness(f, g, w)
    return _emit(_report("witness", [a, b], {"witness": witness_to_doc(w)}, ok))


def _cmd_parametrize(args) -> int:
    src = _Input(args.polyline)
    line = src.polyline()
    builders = {
        "rational": _parametrize.parametrize_rational,
        "laurent": _parametrize.parametrize_laurent,
        "polynomial": _parametrize.parametrize_polynomial,
    }
    par = builders[args.kind](line)
    ok = _parametrize.verify_parametrization(line, par)
    result = {"parametrization": parametrization_to_doc(par)}
    code = _emit(_report("parametrize", [src], result, ok, kind=args.kind))
    if args.figure:
        from .plotting import save_polyline_figure

        save_polyline_figure(line, args.figure)
    return code


def _cmd_verify(args) -> int:
    subject = _Input(args.subject)
    report = _Input(args.report)
    payload = report.doc.get("result", report.doc)
    if "decomposition" in payload:
        d = doc_to_decomposition(payload["decomposition"])
        ok = _decompose.verify(d, subject.function())
    elif "parametrization" in payload:
        par = doc_to_parametrization(payload["parametrization"])
        ok = _parametrize.verify_parametrization(subject.polyline(), par)
    elif payload.get("type") == "decomposition":
        ok = _decompose.verify(doc_to_decomposition(payload), subject.function())
    elif payload.get("type") == "parametrization":
        ok = _parametrize.verify_parametrization(subject.polyline(),
                                                 doc_to_parametrization(payload))
    else:
        raise DocumentError("report carries no verifiable payload")
    return _emit(_report("verify", [subject, report], {"verified": ok}, ok))


def _cmd_example_pair(args) -> int:
    f, g = _commute.build_example_pair(parse_rational(args.t), args.alpha,
                                       args.a, args.b)
    ok = _commute.commutes(f, g)
    return _emit(_report("example-pair", [],
                         {"f": function_to_doc(f), "g": function_to_doc(g)},
                         ok, t=args.t, alpha=args.alpha, a=args.a, b=args.b))


def _cmd_plot(args) -> int:
    from .plotting import function_table_points

    src = _Input(args.function)
    f = src.function()
    pts = function_table_points(f, margin=args.margin)
    sys.stdout.write("# x\tf(x)\n")
    for x in pts:
        sys.stdout.write(f"{fmt(x)}\t{fmt(f(x))}\n")
    if args.figure:
        from .plotting import save_function_figure

        save_function_figure(f, args.figure)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropfn",
        description="Exact algebra of min-plus piecewise-linear functions: "
                    "evaluation, composition, factorization into binomials "
                    "and trinomials, commutation certificates, and polygonal "
                    "line parametrization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a function at a rational point")
    p.add_argument("function")
    p.add_argument("--at", required=True, metavar="X")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("roots", help="list the tropical roots")
    p.add_argument("function")
    p.set_defaults(handler=_cmd_roots)

    p = sub.add_parser("classify", help="shape class and slope integrality")
    p.add_argument("function")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("compose", help="compose two functions (outer inner)")
    p.add_argument("outer")
    p.add_argument("inner")
    p.set_defaults(handler=_cmd_compose)

    p = sub.add_parser("iterate", help="k-fold self-composition")
    p.add_argument("function")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_iterate)

    p = sub.add_parser("invert", help="compositional inverse of an increasing function")
    p.add_argument("function")
    p.set_defaults(handler=_cmd_invert)

    p = sub.add_parser("decompose", help="factor into binomial/trinomial composants")
    p.add_argument("function")
    p.add_argument("--mode", required=True, choices=sorted(_DECOMPOSE_MODES))
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("complete",
                       help="binomials-only decomposability test for integer slopes")
    p.add_argument("function")
    p.set_defaults(handler=_cmd_complete)

    p = sub.add_parser("commute", help="do two functions commute under composition?")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(handler=_cmd_commute)

    p = sub.add_parser("witness", help="structural commutation certificate")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("parametrize", help="parametrize a polygonal line")
    p.add_argument("polyline")
    p.add_argument("--kind", default="rational",
                   choices=["rational", "laurent", "polynomial"])
    p.add_argument("--figure", metavar="PATH",
                   help="also render the line to an image file")
    p.set_defaults(handler=_cmd_parametrize)

    p = sub.add_parser("verify", help="re-check a report against its input object")
    p.add_argument("subject", help="the original function or polyline document")
    p.add_argument("report", help="a report produced by decompose/parametrize")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("example-pair",
                       help="generate the three-edge commuting pair family")
    p.add_argument("--t", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(handler=_cmd_example_pair)

    p = sub.add_parser("plot", help="emit an x/f(x) table of breakpoint samples")
    p.add_argument("function")
    p.add_argument("--margin", type=int, default=1)
    p.add_argument("--figure", metavar="PATH",
                   help="also render the graph to an image file")
    p.set_defaults(handler=_cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DocumentError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
