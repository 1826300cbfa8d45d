"""Command-line entry point.

Exit status: 0 when the report is ok, 1 when a law, safety obligation or
universal property fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import diagram as diag_mod
from . import glue as glue_mod
from .dsl import validate_dsl
from .errors import DslglueError, InputError, ObligationError, ParseError, SearchSpaceExceeded
from .jsonio import dsl_to_json, dump, load_dsl, load_json, load_term, write_json
from .operad import Gen, check_laws, eval_term, profile_of, show_term
from .values import BaseType, Value

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Exit(Exception):
    def __init__(self, status, doc, summary):
        self.status, self.doc, self.summary = status, doc, summary


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise ParseError(f"{path}: no such file")
    return p


def parse_arg(base: BaseType, text: str) -> Value:
    """Read a command-line literal as a value of ``base``."""
    try:
        if base is BaseType.NATURAL:
            return Value.natural(int(text))
        if base is BaseType.STRING:
            return Value.string(text)
        if base is BaseType.BOOLEAN:
            if text not in ("true", "false"):
                raise ValueError(text)
            return Value.boolean(text == "true")
        if base is BaseType.UNIT:
            if text not in ("()", "null", ""):
                raise ValueError(text)
            return Value.unit()
        return Value.fieldmap(json.loads(text))
    except (ValueError, TypeError, AttributeError, InputError):
        raise InputError(f"cannot read {text!r} as a {base} value") from None


def cmd_validate(args):
    d = load_dsl(_existing(args.dsl))
    rep = validate_dsl(d)
    doc = {"command": "validate", "dsl": d.name, **rep.to_json()}
    status = EXIT_OK if rep.ok else EXIT_FAIL
    summary = f"{d.name}: " + ("ok" if rep.ok else f"{len(rep.diagnostics)} problem(s)")
    return status, doc, summary


def cmd_eval(args):
    d = load_dsl(_existing(args.dsl))
    if args.term:
        term = load_term(_existing(args.term))
    else:
        term = Gen(args.symbol)
    rep = validate_dsl(d)
    if not rep.ok:
        raise Exit(EXIT_INPUT, {"command": "eval", "error": "invalid-dsl", **rep.to_json()},
                   f"{d.name} does not validate")
    p = profile_of(d, term)
    if len(args.args) != p.arity:
        raise InputError(f"{show_term(term)} takes {p.arity} arguments, got {len(args.args)}")
    values = [parse_arg(d.base_of(c), a) for c, a in zip(p.inputs, args.args)]
    out = eval_term(d, term, values)
    return EXIT_OK, out.to_json(), f"{show_term(term)} : {p} -> {out!r}"


def cmd_laws(args):
    d = load_dsl(_existing(args.dsl))
    rep = validate_dsl(d)
    if not rep.ok:
        raise Exit(EXIT_INPUT, {"command": "laws", "error": "invalid-dsl", **rep.to_json()},
                   f"{d.name} does not validate")
    report = check_laws(d, args.bound, args.depth)
    lines = [f"{a.law}: {'pass' if a.ok else 'FAIL'} ({a.instances} instances)"
             for a in report.axioms.values()]
    return (EXIT_OK if report.ok else EXIT_FAIL,
            {"command": "laws", **report.to_json()}, "\n".join(lines))


def _report_path(out: Path, suffix: str) -> Path:
    name = out.name
    if name.endswith(".dsl.json"):
        name = name[: -len(".dsl.json")]
    return out.with_name(name + suffix)


def _source_ref(spec: Path, out: Path | None) -> str:
    if out is None:
        return str(spec)
    return os.path.relpath(spec.resolve(), out.resolve().parent)


def _write_outputs(args, glued, doc, suffix):
    if not args.out:
        return
    out = Path(args.out)
    write_json(out, dsl_to_json(glued))
    write_json(_report_path(out, suffix), doc)


def cmd_glue(args):
    spec_path = _existing(args.glue)
    spec = glue_mod.load_glue(spec_path)
    bound = spec.bound if args.bound is None else args.bound
    out = Path(args.out) if args.out else None
    base = {"command": "glue", "kind": "pushout", "source": _source_ref(spec_path, out),
            "bound": bound}
    try:
        p = glue_mod.pushout(spec.span, spec.witnesses, bound)
    except ObligationError as e:
        doc = {**base, "ok": False, "error": _error_tag(e),
               "report": e.report.to_json() if e.report else None}
        raise Exit(EXIT_FAIL, doc, _failure_summary(e))
    doc = {**base, "ok": True, "result": p.to_json(), "glued_dsl": dsl_to_json(p.glued)}
    _write_outputs(args, p.glued, doc, ".pushout.json")
    return EXIT_OK, doc, (f"glued {p.glued.name}: {len(p.glued.sigils)} sigils, "
                          f"{len(p.glued.symbols)} symbols")


def cmd_colimit(args):
    spec_path = _existing(args.diagram)
    spec = diag_mod.load_diagram(spec_path)
    bound = spec.bound if args.bound is None else args.bound
    out = Path(args.out) if args.out else None
    base = {"command": "colimit", "kind": "colimit", "source": _source_ref(spec_path, out),
            "bound": bound}
    try:
        r = diag_mod.colimit(spec.diagram, spec.witnesses, bound)
    except ObligationError as e:
        doc = {**base, "ok": False, "error": _error_tag(e),
               "report": e.report.to_json() if e.report else None}
        raise Exit(EXIT_FAIL, doc, _failure_summary(e))
    doc = {**base, "ok": True, "result": r.to_json(), "colimit_dsl": dsl_to_json(r.colimit)}
    _write_outputs(args, r.colimit, doc, ".colimit.json")
    return EXIT_OK, doc, (f"colimit {r.colimit.name}: {len(r.colimit.sigils)} sigils, "
                          f"{len(r.colimit.symbols)} symbols")


def cmd_check_universal(args):
    path = _existing(args.report)
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    recorded = None
    if doc.get("kind") in ("pushout", "colimit") and "source" in doc:
        kind = doc["kind"]
        if not doc.get("ok"):
            raise InputError(f"{path}: report records a failed {kind}")
        src = Path(doc["source"])
        if not src.is_absolute():
            src = path.parent / src
        spec_path = _existing(str(src))
        recorded = doc.get("result")
        bound = doc.get("bound", 3)
    elif "apex" in doc:
        kind, spec_path, bound = "pushout", path, None
    elif "objects" in doc:
        kind, spec_path, bound = "colimit", path, None
    else:
        raise ParseError(f"{path}: neither a pushout/colimit report nor a glue/diagram spec")

    if kind == "pushout":
        spec = glue_mod.load_glue(spec_path)
        bound = bound or spec.bound
        result = glue_mod.pushout(spec.span, spec.witnesses, bound)
        check = lambda: glue_mod.verify_universal_property(
            result, spec.span, args.max_targets, bound)
    else:
        spec = diag_mod.load_diagram(spec_path)
        bound = bound or spec.bound
        result = diag_mod.colimit(spec.diagram, spec.witnesses, bound)
        check = lambda: diag_mod.verify_colimit_universal(
            result, spec.diagram, args.max_targets, bound)

    out = {"command": "check-universal", "kind": kind, "max_targets": args.max_targets}
    if recorded is not None and recorded != json.loads(json.dumps(result.to_json())):
        out.update(ok=False, error="stale-report")
        return EXIT_FAIL, out, "report does not match a fresh computation"
    rep = check()
    out.update(rep.to_json())
    summary = (f"{kind}: {rep.details.get('cocones', 0)} cocones, "
               + ("every mediator unique" if rep.ok else "universal property FAILS"))
    return EXIT_OK if rep.ok else EXIT_FAIL, out, summary


def _error_tag(e: DslglueError) -> str:
    return {
        "SafetyViolation": "safety-violation",
        "InconsistentQuotient": "inconsistent-quotient",
        "ActionDisagreement": "action-disagreement",
        "InvalidMorphism": "invalid-morphism",
    }.get(type(e).__name__, "error")


def _failure_summary(e: ObligationError) -> str:
    lines = [str(e)]
    if e.report:
        lines += [f"  {d.message}" for d in e.report.diagnostics]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="no summary on stderr")

    parser = argparse.ArgumentParser(
        prog="dslglue", parents=[common],
        description="Check DSLs as colored operads and glue them by pushouts and colimits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a .dsl.json file")
    p.add_argument("dsl")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("eval", parents=[common], help="evaluate a term or symbol")
    p.add_argument("dsl")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--term", help=".term.json file")
    which.add_argument("--symbol", help="function symbol name")
    p.add_argument("--args", nargs="*", default=[], help="literal arguments")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("laws", parents=[common], help="check the operad axioms")
    p.add_argument("dsl")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("glue", parents=[common], help="pushout of a .glue.json span")
    p.add_argument("glue")
    p.add_argument("--out", help="write the glued .dsl.json here (report alongside)")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(fn=cmd_glue)

    p = sub.add_parser("colimit", parents=[common], help="colimit of a .diag.json diagram")
    p.add_argument("diagram")
    p.add_argument("--out", help="write the colimit .dsl.json here (report alongside)")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(fn=cmd_colimit)

    p = sub.add_parser("check-universal", parents=[common],
                       help="brute-force the universal property of a pushout or colimit")
    p.add_argument("report", help=".pushout.json/.colimit.json report or a glue/diagram spec")
    p.add_argument("--max-targets", type=int, default=3)
    p.set_defaults(fn=cmd_check_universal)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        status, doc, summary = args.fn(args)
    except Exit as e:
        status, doc, summary = e.status, e.doc, e.summary
    except (InputError, SearchSpaceExceeded) as e:
        status, summary = EXIT_INPUT, f"error: {e}"
        doc = {"command": args.command, "ok": False, "error": type(e).__name__, "message": str(e)}
    except ObligationError as e:
        status, summary = EXIT_FAIL, _failure_summary(e)
        doc = {"command": args.command, "ok": False, "error": _error_tag(e),
               "report": e.report.to_json() if e.report else None}
    stdout.write(dump(doc))
    if not args.quiet:
        stderr.write(summary.rstrip("\n") + "\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
