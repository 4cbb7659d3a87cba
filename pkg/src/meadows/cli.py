"""Command-line interface.

One subcommand per capability: eval, peval, project, normalize,
decide, truth, classify, comply, check-model, witness, spec.  Exit
status is 0 for successful/positive verdicts (true, Compliant,
defined, T), 1 for negative ones (false, Violation, undefined), and
2 for usage, parse, or signature errors.  --json emits one JSON
object per result with absent fields omitted; rationals print as
n/m in lowest terms, never as decimals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import convention, logic3, normalize, presentations
from .parsing import ParseError, parse_term, render
from .partial import Defined, PunchVariant, punch_eval
from .projection import Projection, project
from .semantics import (
    FiniteMeadow, NotRegular, check_axioms, corollary_witness,
    eval_model, eval_q0, two_squares, zn_meadow, zp_meadow,
)
from .terms import Signature, SignatureError, Term

__all__ = ["main", "run"]

_SIG_CHOICES = ["mixed", "cr", "imd", "dmd", "iamd", "damd", "iamdz", "damdz", "rd"]

_VARIANTS = {v.value: v for v in PunchVariant}
_CONVENTIONS = {c.value: c for c in convention.ConventionId}


def _signature(name: str) -> Signature | None:
    return None if name == "mixed" else Signature(name)


def _parse_assignment(text: str | None, carrier: str) -> dict:
    a: dict = {}
    if not text:
        return a
    for item in text.split(","):
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"bad assignment entry {item!r}; use name=value")
        a[name.strip()] = int(value) if carrier == "finite" else Fraction(value)
    return a


def _load_model(choice: str) -> FiniteMeadow | None:
    if choice == "q0":
        return None
    kind, _, arg = choice.partition(":")
    if kind == "zp" and arg:
        return zp_meadow(int(arg))
    if kind == "zn" and arg:
        return zn_meadow(int(arg))
    raise ValueError(f"unknown model {choice!r}; use q0, zp:<p>, or zn:<n>")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _format_value(value) -> str:
    return str(value)


def _cmd_eval(args) -> int:
    model = _load_model(args.model)
    t = parse_term(args.term, _signature(args.sig))
    a = _parse_assignment(args.assign, "finite" if model else "q0")
    value = eval_model(t, model, a) if model else eval_q0(t, a)
    _emit(args, {"command": "eval", "value": _format_value(value)}, _format_value(value))
    return 0


def _cmd_peval(args) -> int:
    model = _load_model(args.model)
    variant = _VARIANTS[args.variant]
    sig = Signature.IMD if variant is PunchVariant.INV_ZERO else Signature.DMD
    t = parse_term(args.term, sig)
    a = _parse_assignment(args.assign, "finite" if model else "q0")
    result = punch_eval(t, variant, model, a)
    if isinstance(result, Defined):
        value = _format_value(result.value)
        _emit(args, {"command": "peval", "status": "defined", "value": value}, value)
        return 0
    _emit(args, {"command": "peval", "status": "undefined"}, "undefined")
    return 1


_PROJECTIONS = {
    "imn": (Projection.DMN_TO_IMN, Signature.DMD),
    "dmn": (Projection.IMN_TO_DMN, Signature.IMD),
    "rdmn": (Projection.IMN_TO_RDMN, Signature.IMD),
}


def _cmd_project(args) -> int:
    which, source = _PROJECTIONS[args.to]
    t = parse_term(args.term, source)
    image = render(project(t, which))
    _emit(args, {"command": "project", "value": image}, image)
    return 0


def _cmd_normalize(args) -> int:
    sig = Signature(args.sig)
    t = parse_term(args.term, sig)
    nf = normalize.normal_form_closed(t, sig)
    _emit(args, {"command": "normalize", "value": str(nf)}, str(nf))
    return 0


def _decide_witness(theory: str, t: Term, u: Term) -> dict | None:
    if theory.startswith("damd"):
        t = project(t, Projection.DMN_TO_IMN)
        u = project(u, Projection.DMN_TO_IMN)
    if theory in ("iamdz-gil", "damdz-gil"):
        t = normalize.zero_eliminate(t)
        u = normalize.zero_eliminate(u)
    sides = {}
    for label, side in (("left", t), ("right", u)):
        if isinstance(side, normalize.ZeroNF):
            sides[label] = "0"
        else:
            sides[label] = str(normalize.to_polyfrac(side))
    return sides


def _cmd_decide(args) -> int:
    theory = args.theory
    if theory in ("iamd", "iamdz-gil"):
        sig = Signature.IAMD if theory == "iamd" else Signature.IAMDZ
    else:
        sig = Signature.DAMD if theory == "damd" else Signature.DAMDZ
    t = parse_term(args.left, sig)
    u = parse_term(args.right, sig)
    verdict = normalize.decide_by_theory(theory, t, u)
    payload = {
        "command": "decide",
        "verdict": "true" if verdict else "false",
        "witness": _decide_witness(theory, t, u),
    }
    print(json.dumps(payload, sort_keys=False))
    return 0 if verdict else 1


def _default_domain() -> str:
    return os.environ.get("MEADOW_DEFAULT_DOMAIN", "0,1,2")


_EQUALITIES = {e.value: e for e in logic3.Equality}
_CONNECTIVES = {c.value: c for c in logic3.Connectives}
_QUANTIFIERS = {q.value: q for q in logic3.Quantifiers}


def _cmd_truth(args) -> int:
    model = _load_model(args.model)
    variant = _VARIANTS[args.variant]
    sig = Signature.IMD if variant is PunchVariant.INV_ZERO else Signature.DMD
    domain_text = args.domain if args.domain is not None else _default_domain()
    if model is None:
        domain = tuple(Fraction(v) for v in domain_text.split(","))
    else:
        domain = tuple(int(v) for v in domain_text.split(","))
    if args.logic == "lpmd":
        cfg = logic3.lpmd(domain)
    else:
        cfg = logic3.LogicConfig(
            _EQUALITIES[args.eq], _CONNECTIVES[args.conn],
            _QUANTIFIERS[args.quant], domain,
        )
    f = logic3.parse_formula(args.formula, sig)
    a = _parse_assignment(args.assign, "finite" if model else "q0")
    value = logic3.eval_formula(f, cfg, variant, model, a)
    _emit(args, {"command": "truth", "value": str(value)}, str(value))
    return 0 if value is logic3.TruthValue3.T else 1


def _cmd_classify(args) -> int:
    t = parse_term(args.term, Signature.IAMDZ)
    result = convention.classify(t, args.mode, args.vars_defined)
    _emit(args, {"command": "classify", "verdict": str(result)}, str(result))
    return 0 if result is not convention.DefNzClass.NEITHER else 1


def _cmd_comply(args) -> int:
    if args.open:
        t = parse_term(args.term, Signature.IAMDZ)
        result = convention.open_compliance_sufficient(t, args.mode, args.vars_defined)
        _emit(args, {"command": "comply", "verdict": str(result)}, str(result))
        return 0 if result is convention.Sufficiency.CERTIFIED_COMPLIANT else 1
    conv = _CONVENTIONS[args.convention]
    sig = (
        Signature.IMD
        if conv is convention.ConventionId.RELEVANT_INVERSIVE
        else Signature.DMD
    )
    t = parse_term(args.term, sig)
    result = convention.closed_compliance(t, conv)
    if isinstance(result, convention.Violation):
        payload = {
            "command": "comply",
            "verdict": "Violation",
            "witness": {"subterm": render(result.subterm), "detail": result.detail},
        }
        _emit(args, payload, str(result))
        return 1
    _emit(args, {"command": "comply", "verdict": "Compliant"}, "Compliant")
    return 0


def _cmd_check_model(args) -> int:
    if args.zp is not None:
        model, label = zp_meadow(args.zp), f"zp:{args.zp}"
    elif args.zn is not None:
        model, label = zn_meadow(args.zn), f"zn:{args.zn}"
    else:
        raise ValueError("one of --zp or --zn is required")
    failures = check_axioms(model, args.axioms)
    if not failures:
        count = len(presentations.builtin(args.axioms).axioms)
        text = f"ok: all {count} {args.axioms} axioms hold in {label}"
        _emit(args, {"command": "check-model", "verdict": "ok"}, text)
        return 0
    payload = {
        "command": "check-model",
        "verdict": "fail",
        "witness": [str(f) for f in failures],
    }
    _emit(args, payload, "\n".join(str(f) for f in failures))
    return 1


def _cmd_witness(args) -> int:
    p = args.prime
    if args.residue is not None:
        v, w = two_squares(p, args.residue)
        value = {"prime": p, "residue": args.residue, "v": v, "w": w}
        text = f"{args.residue} = {v}^2 + {w}^2 (mod {p})"
    else:
        u, v, w = corollary_witness(p)
        value = {"prime": p, "u": u, "v": v, "w": w}
        text = f"{u}^2 + {v}^2 + 1 = {w} * {p}"
    _emit(args, {"command": "witness", "value": value}, text)
    return 0


def _render_presentation(p: presentations.Presentation) -> str:
    lines = [f"presentation {p.name}"]
    lines.append("visible: " + ", ".join(sorted(str(s) for s in p.visible)))
    hidden = ", ".join(sorted(str(s) for s in p.hidden_symbols))
    if hidden:
        lines.append("hidden: " + hidden)
    lines.append(f"axioms ({len(p.axioms)}):")
    for eq in p.axioms:
        lines.append(f"  {eq.name}: {render(eq.lhs)} = {render(eq.rhs)}")
    return "\n".join(lines)


def _cmd_spec(args) -> int:
    if args.show:
        p = presentations.builtin(args.show)
    else:
        p = presentations.parse_module_expression(args.flatten)
    payload = {
        "command": "spec",
        "value": {
            "name": p.name,
            "visible": sorted(str(s) for s in p.visible),
            "hidden": sorted(str(s) for s in p.hidden_symbols),
            "axioms": [
                {"name": eq.name, "lhs": render(eq.lhs), "rhs": render(eq.rhs)}
                for eq in p.axioms
            ],
        },
    }
    _emit(args, payload, _render_presentation(p))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meadow",
        description="Zero-totalized field arithmetic and meadow term tools.",
    )
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a term in a total model")
    p.add_argument("--model", default="q0", help="q0 (default), zp:<p>, or zn:<n>")
    p.add_argument("--sig", default="mixed", choices=_SIG_CHOICES)
    p.add_argument("--assign", help="comma-separated name=value bindings")
    p.add_argument("term")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("peval", help="evaluate a term in a punched model")
    p.add_argument("--variant", required=True, choices=sorted(_VARIANTS))
    p.add_argument("--model", default="q0")
    p.add_argument("--assign")
    p.add_argument("term")
    p.set_defaults(func=_cmd_peval)

    p = sub.add_parser("project", help="translate a term between notations")
    p.add_argument("--to", required=True, choices=["imn", "dmn", "rdmn"])
    p.add_argument("term")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("normalize", help="normal form of a closed arithmetical term")
    p.add_argument("--sig", required=True, choices=["iamd", "iamdz"])
    p.add_argument("term")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("decide", help="decide equality of two terms")
    p.add_argument(
        "--theory", required=True,
        choices=["iamd", "iamdz-gil", "damd", "damdz-gil", "iamdz", "damdz"],
    )
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("truth", help="three-valued truth value of a formula")
    p.add_argument("--eq", default="weak", choices=sorted(_EQUALITIES))
    p.add_argument("--conn", default="mccarthy", choices=sorted(_CONNECTIVES))
    p.add_argument("--quant", default="bochvar", choices=sorted(_QUANTIFIERS))
    p.add_argument("--variant", default="div0", choices=sorted(_VARIANTS))
    p.add_argument("--domain", help="comma-separated carrier values (default 0,1,2)")
    p.add_argument("--logic", choices=["lpmd"], help="preset overriding eq/conn/quant")
    p.add_argument("--model", default="q0")
    p.add_argument("--assign")
    p.add_argument("formula")
    p.set_defaults(func=_cmd_truth)

    p = sub.add_parser("classify", help="Def/Nz class of an arithmetical term")
    p.add_argument("--mode", default="strict", choices=["strict", "literal"])
    p.add_argument("--vars-defined", action="store_true", dest="vars_defined")
    p.add_argument("term")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("comply", help="division-convention compliance")
    p.add_argument("--convention", choices=sorted(_CONVENTIONS), default="div0")
    p.add_argument("--open", action="store_true",
                   help="sound syntactic check for open terms")
    p.add_argument("--mode", default="strict", choices=["strict", "literal"])
    p.add_argument("--vars-defined", action="store_true", dest="vars_defined")
    p.add_argument("term")
    p.set_defaults(func=_cmd_comply)

    p = sub.add_parser("check-model", help="exhaustively check axioms in a finite model")
    p.add_argument("--zp", type=int, help="zero-totalized prime field Z_p")
    p.add_argument("--zn", type=int, help="meadow expansion of Z_n (n squarefree)")
    p.add_argument("--axioms", default="imd")
    p.set_defaults(func=_cmd_check_model)

    p = sub.add_parser("witness", help="number-theoretic witnesses for a prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--residue", type=int, help="two-squares decomposition of a residue")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("spec", help="show or flatten presentations")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--show", metavar="NAME")
    group.add_argument(
        "--flatten", metavar="EXPR",
        help="combine(A,B), hide(sym,A), export({syms},A), rename(a:=b,A)",
    )
    p.set_defaults(func=_cmd_spec)

    return parser


def run(argv: list[str]) -> int:
    """Parse argv and execute; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    # Numeral literals expand to towers of additions; give evaluation room.
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 50_000))
    try:
        return args.func(args)
    except (ParseError, SignatureError, normalize.UnsupportedTheory, NotRegular,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RecursionError:
        print("error: term is nested too deeply", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
