"""Command line: ``churchforge {compile,verify,eval,normalize,typecheck,trajectory,compat}``.

Every flag can also be set through an environment variable named
``CHURCHFORGE_<FLAG>`` (e.g. ``CHURCHFORGE_MAX_INPUT``); flags win.  With
``--format jsonl`` each output line is a JSON record with the keys
``command``, ``input``, ``result`` and optionally ``witness``, ``type``,
``width`` and ``steps``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import compiler as C
from . import gexpr as G
from .encodings import numeral_value
from .finite_model import BUILTIN_ORACLES, CapExceeded, FiniteModel, compat_falsify, numeral_trajectory
from .simple_types import TypeErrorBase, explain_check, infer_principal, is_ground
from .syntax import ParseError, format_gexpr, format_term, format_type, parse_gfunction, parse_term, parse_type
from .terms import DEFAULT_FUEL, FuelExhausted, normalize

ENV_PREFIX = "CHURCHFORGE_"


def _env(name: str, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    return cast(raw)


def _read_source(arg: str) -> str:
    """Inline text, ``@path`` for a file, or ``-`` for stdin."""
    if arg == "-":
        return sys.stdin.read().strip()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, text: str, **rec):
        if self.fmt == "jsonl":
            rec = {k: v for k, v in rec.items() if v is not None}
            self.stream.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")
        else:
            self.stream.write(text + "\n")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "jsonl"), default=_env("FORMAT", "text"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="churchforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def width_flags(p):
        p.add_argument("-s", "--width", type=int, default=_env("WIDTH", None, int))
        p.add_argument("--arity", type=int, default=_env("ARITY", None, int),
                       help="arity k (default: largest variable index)")

    def fuel_flag(p):
        p.add_argument("--fuel", type=int, default=_env("FUEL", DEFAULT_FUEL, int))

    def model_flags(p):
        p.add_argument("-q", "--base-size", type=int, default=_env("BASE_SIZE", 2, int))
        p.add_argument("--cap", type=int, default=_env("CAP", 10**6, int))

    p = sub.add_parser("compile", help="compile a G expression to a lambda term")
    p.add_argument("expr")
    width_flags(p)
    _add_common(p)

    p = sub.add_parser("verify", help="check a compiled expression against the arithmetic oracle")
    p.add_argument("expr")
    width_flags(p)
    fuel_flag(p)
    p.add_argument("--max-input", type=int, default=_env("MAX_INPUT", 5, int))
    p.add_argument("--strategy", choices=("nbe", "normal", "innermost"), default=_env("STRATEGY", "nbe"))
    p.add_argument("--corrupt", action="store_true", help="test hook: verify a deliberately broken term")
    _add_common(p)

    p = sub.add_parser("eval", help="evaluate a G expression with the oracle and the compiled term")
    p.add_argument("expr")
    p.add_argument("args", nargs="*", type=int)
    width_flags(p)
    fuel_flag(p)
    _add_common(p)

    p = sub.add_parser("normalize", help="beta-eta normal form of a closed lambda term")
    p.add_argument("term")
    fuel_flag(p)
    p.add_argument("--strategy", choices=("normal", "innermost", "nbe"), default=_env("STRATEGY", "normal"))
    p.add_argument("--beta-only", action="store_true")
    _add_common(p)

    p = sub.add_parser("typecheck", help="principal type, optionally checked against a target")
    p.add_argument("term")
    p.add_argument("type", nargs="?")
    _add_common(p)

    p = sub.add_parser("trajectory", help="preperiod and period of numerals in a finite model")
    p.add_argument("type")
    model_flags(p)
    _add_common(p)

    p = sub.add_parser("compat", help="search a finite model for a counterexample to strict definability")
    p.add_argument("function", choices=sorted(BUILTIN_ORACLES))
    p.add_argument("type")
    model_flags(p)
    p.add_argument("--n-bound", type=int, default=_env("N_BOUND", 50, int))
    _add_common(p)
    return parser


# -- commands -----------------------------------------------------------------------------


def _load_function(args) -> G.GFunction:
    return parse_gfunction(_read_source(args.expr), args.arity)


def cmd_compile(args, out: Output) -> int:
    f = _load_function(args)
    c = C.compile_function(f, args.width)
    ty = format_type(c.claimed_type, abbreviate=True)
    term = format_term(c.term)
    out.record(
        f"term:  {term}\ntype:  {ty}\nwidth: {c.width}",
        command="compile", input=format_gexpr(f.body), result=term, type=ty, width=c.width,
    )
    return 0


def cmd_verify(args, out: Output) -> int:
    f = _load_function(args)
    c = C.compile_function(f, args.width)
    if args.corrupt:
        c = C.corrupt(c)
    inputs = C.all_inputs(f.arity, args.max_input)
    report = C.verify(c, f, inputs, args.fuel, args.strategy)
    src = format_gexpr(f.body)
    for case in report.cases:
        status = "pass" if case.ok else "FAIL"
        detail = f"expected {case.expected}, got {case.got if case.error is None else case.error}"
        out.record(
            f"{status} {list(case.args)}: {detail}",
            command="verify",
            input={"expr": src, "args": list(case.args), "width": c.width, "fuel": args.fuel,
                   "strategy": args.strategy, "corrupt": args.corrupt},
            result={"status": status.lower(), "expected": case.expected, "got": case.got, "error": case.error},
            steps=case.steps,
        )
    ty = format_type(c.claimed_type, abbreviate=True)
    type_status = "pass" if report.type_ok else "fail"
    out.record(
        f"type {type_status}: {ty}" + ("" if report.type_ok else f" ({report.type_error})"),
        command="verify", input={"expr": src, "width": c.width, "check": "type"},
        result={"status": type_status, "error": report.type_error}, type=ty, width=c.width,
    )
    summary = f"{report.n_passed}/{len(report.cases)} pass, type check {type_status}"
    out.record(
        summary, command="verify", input={"expr": src, "width": c.width, "max_input": args.max_input},
        result={"status": "pass" if report.passed else "fail", "passed": report.n_passed, "total": len(report.cases)},
        width=c.width,
    )
    return 0 if report.passed else 1


def cmd_eval(args, out: Output) -> int:
    f = _load_function(args)
    oracle = G.eval_function(f, args.args)
    c = C.compile_function(f, args.width)
    case = C.run_case(c, f, args.args, args.fuel)
    ok = case.ok
    out.record(
        f"oracle: {oracle}\nterm:   {case.got}",
        command="eval", input={"expr": format_gexpr(f.body), "args": list(args.args)},
        result={"oracle": oracle, "compiled": case.got, "status": "pass" if ok else "fail"},
        width=c.width, steps=case.steps,
    )
    return 0 if ok else 1


def cmd_normalize(args, out: Output) -> int:
    t = parse_term(_read_source(args.term))
    res = normalize(t, args.fuel, args.strategy, eta=not args.beta_only)
    text = format_term(res.term)
    n = numeral_value(res.term)
    extra = "" if n is None else f"  (numeral {n})"
    out.record(
        f"{text}{extra}\nsteps: {res.steps}",
        command="normalize", input=format_term(t), result=text, steps=res.steps,
    )
    return 0


def cmd_typecheck(args, out: Output) -> int:
    t = parse_term(_read_source(args.term))
    principal = infer_principal(t)
    if args.type is None:
        out.record(format_type(principal), command="typecheck", input=format_term(t),
                   result="typable", type=format_type(principal))
        return 0
    target = parse_type(args.type)
    if not is_ground(target):
        raise ValueError("target type must be ground")
    err = explain_check(t, target)
    status = "pass" if err is None else "fail"
    out.record(
        f"{status}: principal {format_type(principal)}" + ("" if err is None else f"\n{err}"),
        command="typecheck", input={"term": format_term(t), "target": format_type(target)},
        result=status, type=format_type(principal),
    )
    return 0 if err is None else 1


def cmd_trajectory(args, out: Output) -> int:
    tau = parse_type(args.type)
    m = FiniteModel(args.base_size, args.cap)
    inp = {"type": format_type(tau), "q": args.base_size, "cap": args.cap}
    try:
        traj = numeral_trajectory(tau, m)
    except CapExceeded as e:
        out.record(f"cap exceeded: {e}", command="trajectory", input=inp,
                   result={"status": "cap_exceeded", "cardinality": e.cardinality})
        return 2
    out.record(
        f"l = {traj.preperiod}, t_min = {traj.period}, states = {traj.states}",
        command="trajectory", input=inp,
        result={"status": "ok", "preperiod": traj.preperiod, "period": traj.period, "states": traj.states},
    )
    return 0


def cmd_compat(args, out: Output) -> int:
    tau = parse_type(args.type)
    m = FiniteModel(args.base_size, args.cap)
    inp = {"function": args.function, "type": format_type(tau), "q": args.base_size, "n_bound": args.n_bound}
    try:
        w = compat_falsify(BUILTIN_ORACLES[args.function], tau, m, args.n_bound)
    except CapExceeded as e:
        out.record(f"cap exceeded: {e}", command="compat", input=inp,
                   result={"status": "cap_exceeded", "cardinality": e.cardinality})
        return 2
    if w is None:
        out.record(f"no counterexample <= {args.n_bound}", command="compat", input=inp, result="none")
    else:
        out.record(
            f"witness {w}: rho({w[0]}) and rho({w[1]}) coincide in the model, their images do not",
            command="compat", input=inp, result="witness", witness=list(w),
        )
    return 0


COMMANDS = {
    "compile": cmd_compile,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "normalize": cmd_normalize,
    "typecheck": cmd_typecheck,
    "trajectory": cmd_trajectory,
    "compat": cmd_compat,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        return COMMANDS[args.command](args, out)
    except (ParseError, ValueError, TypeErrorBase, FuelExhausted) as e:
        kind = type(e).__name__
        inp = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format")}
        out.record(f"error: {kind}: {e}", command=args.command, input=inp,
                   result={"status": "error", "error": kind, "message": str(e)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
