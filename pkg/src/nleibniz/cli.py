"""Command-line front end.

Exit codes: 0 success, 1 check or axiom failure, 2 I/O or parse error,
3 guardrail, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import axioms, correspondence, linalg, morphisms
from .errors import AxiomViolation, GuardrailExceeded, InternalInvariantViolation, ParseError
from .kernels import BACKEND
from .model import (
    LieTripleData,
    NLeibnizAlgebra,
    algebra_to_dict,
    dumps,
    guardrail,
    parse_any,
    serialize_algebra,
    serialize_triple,
)

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_GUARDRAIL, EXIT_INTERNAL = 0, 1, 2, 3, 4

COMMANDS = ("check", "lift", "reconstruct", "roundtrip", "derivations", "info")


class _Usage(Exception):
    """Wrong kind of input for a command; reported like a parse error."""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nleibniz",
        description="Exact checks and constructions for generalized metric n-Leibniz algebras "
                    "and Lie triple data.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", type=Path)
    p.add_argument("--out", type=Path, default=None, help="write the JSON artifact here")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--transfer", action="store_true",
                   help="derivations: run both transfer verifications on every basis element")
    return p


def _load(path: Path):
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_any(data)


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise ParseError(f"cannot write {path}: {exc.strerror or exc}") from None


def sidecar_path(out: Path) -> Path:
    return out.with_name(out.stem + ".sidecar.json")


def _need_algebra(obj, command) -> NLeibnizAlgebra:
    if not isinstance(obj, NLeibnizAlgebra):
        raise _Usage(f"{command} expects an n-leibniz file")
    return obj


def _need_triple(obj, command) -> LieTripleData:
    if not isinstance(obj, LieTripleData):
        raise _Usage(f"{command} expects a lie-triple-data file")
    return obj


def _sig(sig) -> str:
    return "(" + ",".join(str(x) for x in sig) + ")"


# each command returns (exit code, JSON document, text lines)

def cmd_check(obj, args):
    reports = axioms.check_algebra(obj) if isinstance(obj, NLeibnizAlgebra) else axioms.check_triple(obj)
    ok = all(r.passed for r in reports)
    kind = "n-leibniz" if isinstance(obj, NLeibnizAlgebra) else "lie-triple-data"
    doc = {"kind": kind, "pass": ok, "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        if r.passed:
            lines.append(f"PASS {r.check} ({r.tuples_scanned} tuples)")
        else:
            lines.append(f"FAIL {r.check} ({r.tuples_scanned} tuples) witness: {json.dumps(r.witness)}"
                         if r.witness else f"FAIL {r.check}")
    return (EXIT_OK if ok else EXIT_FAIL), doc, lines


def cmd_lift(obj, args):
    A = _need_algebra(obj, "lift")
    L = correspondence.lift(A)
    side = L.sidecar()
    doc = {"dim_g": L.g.dim, **side}
    if args.out is not None:
        _write(args.out, serialize_triple(L.triple))
        _write(sidecar_path(args.out), dumps(side))
        doc["out"] = str(args.out)
        doc["sidecar"] = str(sidecar_path(args.out))
    lines = [f"dim g = {L.g.dim}, signature = {_sig(side['omega_signature'])}"]
    if args.out is not None:
        lines.append(f"wrote {args.out} and {sidecar_path(args.out)}")
    return EXIT_OK, doc, lines


def cmd_reconstruct(obj, args):
    T = _need_triple(obj, "reconstruct")
    A = correspondence.reconstruct(T)
    doc = {"dimension": A.dim, "arity": A.arity, "bracket_entries": len(A.bracket)}
    if args.out is not None:
        _write(args.out, serialize_algebra(A))
        doc["out"] = str(args.out)
    else:
        doc["algebra"] = algebra_to_dict(A)
    lines = [f"arity = {A.arity}, dim V = {A.dim}, bracket entries = {len(A.bracket)}"]
    if args.out is not None:
        lines.append(f"wrote {args.out}")
    return EXIT_OK, doc, lines


def cmd_roundtrip(obj, args):
    if isinstance(obj, NLeibnizAlgebra):
        result = correspondence.require(correspondence.roundtrip_algebra(obj))
        line = f"PASS algebra round trip: dim g = {result.details['dim_g']}, structure constants reproduced"
    else:
        result = correspondence.require(correspondence.roundtrip_triple(obj))
        line = (f"PASS triple round trip: dim Im D = {result.details['dim_image_D']} = dim g, "
                f"omega pulls back exactly")
    return EXIT_OK, result.to_json(), [line]


def cmd_derivations(obj, args):
    A = _need_algebra(obj, "derivations")
    ok, rep = axioms.is_generalized_metric(A)
    if not ok:
        raise AxiomViolation(f"derivations requires a generalized metric algebra; {rep.check} fails", rep)
    space = morphisms.solve_derivations(A)
    ops, gens = correspondence.image_of_D(A)
    inner = sum(space.contains(op) for op in ops)
    doc = {"dimension": space.dimension, "constraint_rank": space.constraint_rank,
           "inner_in_span": inner, "inner_dimension": len(ops),
           "closed_under_commutator": space.is_closed()}
    lines = [f"dimension = {space.dimension}",
             f"inner derivations in span: {inner}/{len(ops)}",
             f"closed under commutator: {'yes' if doc['closed_under_commutator'] else 'no'}"]
    code = EXIT_OK if inner == len(ops) and doc["closed_under_commutator"] else EXIT_FAIL
    if args.transfer:
        L = correspondence.lift(A, check=False)
        results = []
        for i, X in enumerate(space.basis):
            d_g, to_lie = morphisms.induce_lie_derivation(L, X)
            back = (morphisms.induce_from_triple_derivation(L.triple, d_g, X)
                    if d_g is not None else None)
            passed = to_lie.passed and back is not None and back.passed
            results.append({"index": i, "to_lie": to_lie.to_json(),
                            "from_triple": back.to_json() if back is not None else None})
            lines.append(f"{'PASS' if passed else 'FAIL'} transfer of basis element {i}")
            if not passed:
                code = EXIT_FAIL
        doc["transfers"] = results
    if args.out is not None:
        _write(args.out, dumps(space.to_json()))
        doc["out"] = str(args.out)
        lines.append(f"wrote {args.out}")
    return code, doc, lines


def cmd_info(obj, args):
    if isinstance(obj, NLeibnizAlgebra):
        doc = {"kind": "n-leibniz", "arity": obj.arity, "dimension": obj.dim,
               "basis": list(obj.basis), "bracket_entries": len(obj.bracket),
               "form_entries": len(obj.form.coeffs)}
        lines = [f"n-leibniz: arity {obj.arity}, dimension {obj.dim}, "
                 f"{len(obj.bracket)} bracket entries, {len(obj.form.coeffs)} form entries"]
    else:
        sig = list(linalg.signature(obj.g.omega)) if obj.g.omega.is_symmetric() else None
        doc = {"kind": "lie-triple-data", "arity": obj.arity, "lie_dimension": obj.g.dim,
               "module_dimension": obj.module_dim, "omega_signature": sig}
        lines = [f"lie-triple-data: arity {obj.arity}, dim g = {obj.g.dim}, dim V = {obj.module_dim}, "
                 f"omega signature = {_sig(sig) if sig else 'n/a (not symmetric)'}"]
    doc["backend"] = BACKEND
    doc["guardrail"] = guardrail()
    lines.append(f"backend = {BACKEND}, guardrail = {doc['guardrail']}")
    return EXIT_OK, doc, lines


HANDLERS = {
    "check": cmd_check,
    "lift": cmd_lift,
    "reconstruct": cmd_reconstruct,
    "roundtrip": cmd_roundtrip,
    "derivations": cmd_derivations,
    "info": cmd_info,
}


def _emit_error(args, code: int, exc: Exception, report=None) -> int:
    print(f"error: {exc}", file=sys.stderr)
    if args.format == "json":
        doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        if report is not None:
            doc["report"] = report.to_json()
        sys.stdout.write(dumps(doc))
    elif report is not None and report.witness:
        print(f"FAIL {report.check} witness: {json.dumps(report.witness)}")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj = _load(args.file)
        code, doc, lines = HANDLERS[args.command](obj, args)
    except (ParseError, _Usage) as exc:
        return _emit_error(args, EXIT_IO, exc)
    except GuardrailExceeded as exc:
        return _emit_error(args, EXIT_GUARDRAIL, exc)
    except InternalInvariantViolation as exc:
        return _emit_error(args, EXIT_INTERNAL, exc, exc.report)
    except AxiomViolation as exc:
        return _emit_error(args, EXIT_FAIL, exc, exc.report)
    except ValueError as exc:
        # structurally inconsistent input that got past the schema
        return _emit_error(args, EXIT_IO, exc)
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
