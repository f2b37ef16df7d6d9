"""``nelson-s``: proof checking, algebra checks, enumeration and demos.

Exit status: 0 on success, 1 on a logical failure (rejected proof, failed
class check, countermodel found), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import calculus_s
from .algebra import (
    AlgebraFileError,
    StatementError,
    check_cibrl,
    check_s_prime,
    dump_algebra,
    eval_term,
    load_algebra,
    parse_statement,
)
from .algebraizer import FORMS, CompileError, check_s_def34, compile_calculus, load_calculus_file
from .calculus_sp import DeductionError, check_proof_sp, deduction_transform
from .demos import DEFAULT_SEED, DEMOS, run_demo
from .formula import Lang, ParseError, parse, to_text
from .model_search import DEFAULT_CEILING, SearchError, enumerate_class, find_countermodel
from .n4 import N4Algebra, check_n3, check_n4_lattice, check_proof_n4, dump_n4, load_n4
from .presentation import CalculusFileError
from .proofs import ProofFileError, dump_proof, load_proof

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PROOF_CALCULI = {"s": Lang.S, "sprime": Lang.S_PRIME, "n4": Lang.N4, "n3": Lang.N4}
ALGEBRA_CLASSES = ("cibrl", "sprime", "s-def34", "n4", "n3")
SEARCH_CLASSES = {
    "cibrl": "cibrl",
    "cibrl-3potent": "cibrl_3potent",
    "sprime": "s_prime",
    "s-def34": "s_def34",
    "n4": "n4_lattice",
    "n3": "n3_lattice",
}
BUILTIN_CALCULI = {"S": ("S.calc", Lang.S), "S'": ("Sprime.calc", Lang.S_PRIME)}


class UsageError(Exception):
    pass


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _load_any_algebra(path: str):
    """``.n4`` files hold N4-lattices; everything else is a residuated algebra."""
    return load_n4(path) if Path(path).suffix == ".n4" else load_algebra(path)


# -- commands -----------------------------------------------------------------


def cmd_check_proof(args) -> int:
    proof = load_proof(args.file, PROOF_CALCULI[args.calculus])
    if args.calculus == "s":
        report = calculus_s.check_proof(proof, args.mode)
    elif args.mode != "standard":
        raise UsageError("--mode historical applies to --calculus s only")
    elif args.calculus == "sprime":
        report = check_proof_sp(proof)
    else:
        report = check_proof_n4(proof, n3=args.calculus == "n3")
    payload = {"file": args.file, "calculus": args.calculus, "mode": args.mode, **report.as_dict()}
    _emit(args, payload, [f"{args.file} ({args.calculus}, {args.mode})", *report.lines()])
    return EXIT_OK if report.accepted else EXIT_FAIL


def cmd_check_algebra(args) -> int:
    a = _load_any_algebra(args.file)
    is_n4 = isinstance(a, N4Algebra)
    if is_n4 != (args.cls in ("n4", "n3")):
        raise UsageError(f"class {args.cls} does not match the file format of {args.file}")
    if args.cls == "cibrl":
        report = check_cibrl(a)
    elif args.cls == "sprime":
        report = check_s_prime(a)
    elif args.cls == "s-def34":
        report = check_s_def34(a, args.gamma_bound, args.form)
    elif args.cls == "n4":
        report = check_n4_lattice(a)
    else:
        report = check_n3(a)
    _emit(args, report.as_dict(), report.lines())
    return EXIT_OK if report.passed else EXIT_FAIL


def _parse_valuation(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise UsageError(f"bad valuation entry {part!r}; expected var=element")
        k, v = (s.strip() for s in part.split("=", 1))
        out[k] = v
    return out


def cmd_eval(args) -> int:
    a = _load_any_algebra(args.algebra)
    term = parse(args.term, Lang.ANY)
    val = _parse_valuation(args.valuation)
    try:
        value = a.names[eval_term(a, term, val)]
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    _emit(args, {"term": to_text(term), "valuation": val, "value": value}, [value])
    return EXIT_OK


def _dump(a) -> str:
    return dump_n4(a) if isinstance(a, N4Algebra) else dump_algebra(a)


def cmd_enumerate(args) -> int:
    cls = SEARCH_CLASSES[args.cls]
    sizes = range(1, args.size + 1) if args.cumulative else (args.size,)
    results = [enumerate_class(cls, n, jobs=args.jobs, ceiling=args.ceiling) for n in sizes]
    payload = {
        "class": args.cls,
        "counts": {str(r.size): r.count for r in results},
        "algebras": {str(r.size): [_dump(a) for a in r.algebras] for r in results} if args.dump else {},
    }
    lines = [f"{args.cls} size {r.size}: {r.count}" for r in results]
    if args.dump:
        for r in results:
            for a in r.algebras:
                lines += ["", _dump(a).rstrip()]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_countermodel(args) -> int:
    q = parse_statement(args.statement)
    if args.algebra:
        where = [_load_any_algebra(p) for p in args.algebra]
        scope = ", ".join(args.algebra)
    else:
        where = SEARCH_CLASSES[args.cls]
        scope = f"{args.cls} up to size {args.max_size}"
    cm = find_countermodel(q, where, args.max_size, jobs=args.jobs)
    payload = {"statement": q.text(), "scope": scope, "holds": cm is None}
    if cm is None:
        lines = [f"no countermodel to {q.text()} in {scope}"]
    else:
        payload.update(algebra=_dump(cm.algebra), valuation=cm.valuation, size=cm.size)
        lines = [
            f"countermodel to {q.text()} of size {cm.size}",
            "valuation: " + ", ".join(f"{k}={v}" for k, v in cm.valuation.items()),
            "",
            _dump(cm.algebra).rstrip(),
        ]
    _emit(args, payload, lines)
    return EXIT_OK if cm is None else EXIT_FAIL


def cmd_compile_calculus(args) -> int:
    if args.builtin:
        from .fixtures_dir import fixture_path

        fname, lang = BUILTIN_CALCULI[args.builtin]
        calc = load_calculus_file(fixture_path("calculi", fname), lang)
    elif args.file:
        calc = load_calculus_file(args.file)
    else:
        raise UsageError("give a calculus file or --builtin")
    conds = compile_calculus(calc, args.gamma_bound, args.form)
    payload = {
        "calculus": calc.name,
        "gamma_bound": args.gamma_bound,
        "form": args.form,
        "conditions": [{"item": c.item, "label": c.label, "statement": c.statement.text()} for c in conds],
    }
    _emit(args, payload, [c.text() for c in conds])
    return EXIT_OK


def cmd_dmt(args) -> int:
    proof = load_proof(args.file, Lang.S_PRIME)
    phi = parse(args.discharge, Lang.S_PRIME)
    try:
        out = deduction_transform(proof, phi)
    except DeductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = check_proof_sp(out)
    text = dump_proof(out)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    payload = {"goal": to_text(out.goal), "steps": len(out.steps), "accepted": report.accepted}
    lines = [text.rstrip()] if not args.output else []
    lines.append(f"# {len(out.steps)} steps, {'accepted' if report.accepted else 'rejected'}")
    _emit(args, payload, lines)
    return EXIT_OK if report.accepted else EXIT_FAIL


def cmd_demo(args) -> int:
    res = run_demo(args.item, args.seed)
    _emit(args, res.as_dict(), res.lines())
    return EXIT_OK if res.passed else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="nelson-s", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-proof", parents=[common], help="check a proof file")
    s.add_argument("file")
    s.add_argument("--calculus", choices=sorted(PROOF_CALCULI), default="s")
    s.add_argument("--mode", choices=("standard", "historical"), default="standard")
    s.set_defaults(func=cmd_check_proof)

    s = sub.add_parser("check-algebra", parents=[common], help="check class membership of a finite algebra")
    s.add_argument("file")
    s.add_argument("--class", dest="cls", choices=ALGEBRA_CLASSES, required=True)
    s.add_argument("--gamma-bound", type=int, default=2)
    s.add_argument("--form", choices=FORMS, default="normalized")
    s.set_defaults(func=cmd_check_algebra)

    s = sub.add_parser("eval", parents=[common], help="evaluate a term in a finite algebra")
    s.add_argument("algebra")
    s.add_argument("term")
    s.add_argument("valuation", nargs="?", default="", help="e.g. x=1,y=b")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate a class up to isomorphism")
    s.add_argument("--class", dest="cls", choices=sorted(SEARCH_CLASSES), required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    s.add_argument("--cumulative", action="store_true", help="report every size from 1 up")
    s.add_argument("--dump", action="store_true", help="print every algebra")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("countermodel", parents=[common], help="search for a refuting algebra")
    s.add_argument("--statement", required=True, help="e.g. 'x => x == y => y'")
    s.add_argument("--class", dest="cls", choices=sorted(SEARCH_CLASSES), default="sprime")
    s.add_argument("--algebra", action="append", help="search these files instead of a class")
    s.add_argument("--max-size", type=int, default=4)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_countermodel)

    s = sub.add_parser("compile-calculus", parents=[common], help="print the algebra conditions of a calculus")
    s.add_argument("file", nargs="?")
    s.add_argument("--builtin", choices=sorted(BUILTIN_CALCULI))
    s.add_argument("--gamma-bound", type=int, default=2)
    s.add_argument("--form", choices=FORMS, default="normalized")
    s.set_defaults(func=cmd_compile_calculus)

    s = sub.add_parser("dmt", parents=[common], help="discharge an assumption of an S' proof")
    s.add_argument("file")
    s.add_argument("--discharge", required=True, help="the assumption formula")
    s.add_argument("-o", "--output", help="write the new proof here")
    s.set_defaults(func=cmd_dmt)

    s = sub.add_parser("demo", parents=[common], help="run a bundled replication pipeline")
    s.add_argument("item", choices=list(DEMOS))
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_demo)
    return p


INPUT_ERRORS = (
    OSError,
    UsageError,
    ParseError,
    ProofFileError,
    AlgebraFileError,
    StatementError,
    CalculusFileError,
    CompileError,
    SearchError,
)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
