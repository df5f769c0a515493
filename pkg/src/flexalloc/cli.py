"""Command-line front end.

Exit codes: 0 success, 1 unreadable input, 2 algorithm precondition failed,
3 oracle budget exhausted, 4 solution failed verification.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import gen, lp, oracle, paging, proper, uniform
from .model import (AllocationError, BandwidthAllocation, ContiguousColoring, FormatError,
                    InvalidInstance, dump_json, load_instance, load_json, save_instance,
                    solution_from_dict, solution_to_dict, verify_fbap, verify_fsap)
from .render import render_ascii, render_svg
from .unitpack import SearchBudgetExceeded

ALGOS = ("paging", "max-small", "uniform-ptas", "proper", "oracle-fbap", "oracle-fsap")
FBAP_ALGOS = {"paging", "oracle-fbap"}

PRECONDITION_ERRORS = (proper.NotProper, proper.BadEpsilon, uniform.NotUniform, uniform.NotMultiple,
                       uniform.BadEpsilon, uniform.StripTooSmall, paging.Infeasible, lp.WTooSmall,
                       lp.BadParams, gen.BadParams, gen.InvalidThreeXc, gen.NoCover)
BUDGET_ERRORS = (oracle.BudgetExceeded, SearchBudgetExceeded)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def parse_rational(text: str) -> Fraction:
    try:
        if any(ch in text for ch in "eE") or text.count(".") > 1:
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} (use p/q)")


def run_algo(algo: str, inst, epsilon: Fraction = None):
    """Returns (solution, metadata dict)."""
    meta = {"algo": algo}
    if algo == "paging":
        sol = paging.paging_fba(inst)
    elif algo == "oracle-fbap":
        sol = oracle.oracle_fbap(inst, oracle.OracleBudget.from_env())
    elif algo == "oracle-fsap":
        sol = oracle.oracle_fsap(inst, oracle.OracleBudget.from_env())
    elif algo == "max-small":
        params = uniform.UniformParams.of(inst)
        sol = uniform.a_max_small(inst, params)
        meta.update(k=params.k, max_req=params.max_req)
    elif algo == "uniform-ptas":
        eps = _need_eps(epsilon)
        params = uniform.UniformParams.of(inst)
        sol = uniform.uniform_ptas(inst, eps, params)
        meta.update(k=params.k, max_req=params.max_req, epsilon=str(eps),
                    branch=uniform.ptas_branch(params, eps))
    elif algo == "proper":
        eps = _need_eps(epsilon)
        run = proper.proper_fsap_run(inst, eps)
        sol = run.coloring
        meta.update(epsilon=str(eps), beta=str(proper.BETA), guess=run.guess, branch=run.branch)
    else:
        raise CliError(1, f"unknown algorithm {algo!r}")
    return sol, meta


def _need_eps(epsilon):
    if epsilon is None:
        raise CliError(2, "this algorithm needs --epsilon p/q")
    return epsilon


def _verify(inst, sol):
    return verify_fsap(inst, sol) if isinstance(sol, ContiguousColoring) else verify_fbap(inst, sol)


def cmd_solve(args) -> int:
    inst = load_instance(args.inp)
    sol, meta = run_algo(args.algo, inst, args.epsilon)
    report = _verify(inst, sol)
    if args.out:
        dump_json(solution_to_dict(inst, sol), args.out)
    meta["total_profit"] = report.total
    print(json.dumps(meta, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.inp)
    kind, sol, declared = solution_from_dict(load_json(args.solution))
    try:
        report = _verify(inst, sol)
    except AllocationError as exc:
        raise CliError(4, str(exc))
    if declared is not None and declared != report.total:
        raise CliError(4, f"ProfitMismatch: declared {declared}, computed {report.total}")
    print(json.dumps({"kind": kind, "total_profit": report.total, "valid": True}, sort_keys=True))
    return 0


def _ratio(profit, opt):
    if opt == 0:
        return Fraction(1)
    return Fraction(profit, opt)


def cmd_compare(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise CliError(1, f"unknown algorithm {a!r}")
    files = sorted(Path(args.suite).glob("*.json"))
    rows = []
    worst = {}
    for path in files:
        inst = load_instance(path)
        opts = {}
        for a in algos:
            sol, _ = run_algo(a, inst, args.epsilon)
            profit = _verify(inst, sol).total
            opt = ratio = ""
            if args.oracle:
                kind = "fbap" if a in FBAP_ALGOS else "fsap"
                if kind not in opts:
                    fn = oracle.oracle_fbap if kind == "fbap" else oracle.oracle_fsap
                    opts[kind] = fn(inst, oracle.OracleBudget.from_env()).profit(inst)
                opt = opts[kind]
                r = _ratio(profit, opt)
                ratio = f"{float(r):.6f}"
                worst[a] = min(worst.get(a, r), r)
            rows.append([path.stem, a, profit, opt, ratio])
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["instance", "algo", "profit", "oracle_opt", "ratio"])
        w.writerows(rows)
        for a in algos:
            if a in worst:
                w.writerow(["worst", a, "", "", f"{float(worst[a]):.6f}"])
    print(json.dumps({"rows": len(rows), "worst": {a: str(r) for a, r in worst.items()}},
                     sort_keys=True))
    return 0


def cmd_render(args) -> int:
    inst = load_instance(args.inp)
    if args.solution:
        _, sol, _ = solution_from_dict(load_json(args.solution))
    else:
        sol = ContiguousColoring({})
    text = render_svg(inst, sol) if args.format == "svg" else render_ascii(inst, sol)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_generate(args) -> int:
    if args.kind == "random":
        inst = gen.gen_random(args.seed, args.n, args.W, args.max_time, args.profile,
                              max_req=args.max_req, max_profit=args.max_profit,
                              max_len=args.max_len, rmin_max=args.rmin_max)
        save_instance(inst, args.out)
        print(json.dumps({"jobs": inst.n, "capacity": inst.capacity}, sort_keys=True))
        return 0
    x = gen.ThreeXcInstance.from_dict(load_json(args.threexc))
    out = gen.gen_gadget(x)
    save_instance(out.instance, args.out)
    if args.witness:
        if out.witness is None:
            raise gen.NoCover("the 3XC file has no cover, so there is no witness")
        dump_json(solution_to_dict(out.instance, out.witness), args.witness)
    print(json.dumps({"jobs": out.instance.n, "capacity": out.instance.capacity,
                      "expected_profit": out.expected_profit}, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flexalloc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run one algorithm on an instance")
    s.add_argument("--algo", required=True, choices=ALGOS)
    s.add_argument("--epsilon", type=parse_rational)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--solution", required=True)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="run algorithms over a directory of instances")
    c.add_argument("--suite", required=True)
    c.add_argument("--algos", required=True, help="comma-separated list")
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--epsilon", type=parse_rational)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_compare)

    r = sub.add_parser("render", help="draw a solution as ASCII or SVG")
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--solution")
    r.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)

    g = sub.add_parser("generate", help="write a random or gadget instance")
    gs = g.add_subparsers(dest="kind", required=True)
    gr = gs.add_parser("random")
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--W", type=int, required=True)
    gr.add_argument("--max-time", type=int, default=20)
    gr.add_argument("--profile", choices=gen.PROFILES, default="general")
    gr.add_argument("--max-req", type=int)
    gr.add_argument("--max-profit", type=int, default=5)
    gr.add_argument("--max-len", type=int)
    gr.add_argument("--rmin-max", type=int, default=0)
    gr.add_argument("--out", required=True)
    gx = gs.add_parser("gadget")
    gx.add_argument("--threexc", required=True)
    gx.add_argument("--out", required=True)
    gx.add_argument("--witness")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (FormatError, InvalidInstance, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except PRECONDITION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except BUDGET_ERRORS as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return 3
    except AllocationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
