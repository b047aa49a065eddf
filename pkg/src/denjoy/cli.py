"""Command line interface: ``denjoy <command> ...``.

Exit status: 0 pass/true, 1 fail/false, 2 budget exceeded, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from denjoy.closedset import IntervalQ, cantor, full
from denjoy.closedset import to_json as skeleton_json
from denjoy.denfun import LIMIT, SUCCESSOR, build_rank, eval_f, eval_F, from_descriptor
from denjoy.derivative import derivative_step, rank_certify
from denjoy.enclosure import fmt
from denjoy.ordinal import OrdinalError
from denjoy.ppmodule import (
    BudgetExceeded,
    DecideError,
    ParseError,
    classify_basic,
    classify_kernel,
    decide,
    parse_poly,
)
from denjoy.quadcheck import ftc_spotcheck, verify_improper, verify_step

DEPTH_CAP = 16
EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3
SAMPLE_COLUMNS = ["x", "f_lo", "f_hi", "F_lo", "F_hi"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _function(args):
    if args.descriptor:
        text = args.descriptor
        if not text.lstrip().startswith("{"):
            text = Path(text).read_text()
        return from_descriptor(json.loads(text))
    if args.rank is None:
        raise UsageError("give --descriptor or --rank")
    return build_rank(args.rank, IntervalQ(*args.interval), args.r)


def cmd_build(args, out):
    fun = build_rank(args.rank, IntervalQ(*args.interval), args.r)
    text = json.dumps(fun.descriptor(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_sample(args, out):
    fun = _function(args)
    if args.grid < 1:
        raise UsageError("--grid must be >= 1")
    rows = []
    for i in range(args.grid + 1):
        x = fun.interval.affine(Fraction(i, args.grid))
        f = eval_f(fun, x, args.depth)
        F = eval_F(fun, x, args.depth)
        rows.append([fmt(x), fmt(f.lo), fmt(f.hi), fmt(F.lo), fmt(F.hi)])
    if args.format == "json":
        _emit([dict(zip(SAMPLE_COLUMNS, r)) for r in rows], out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(SAMPLE_COLUMNS)
        w.writerows(rows)
    return EXIT_OK


def cmd_verify(args, out):
    fun = _function(args)
    if args.which == "step":
        if fun.node_kind != SUCCESSOR:
            raise UsageError(f"--which step needs a successor rank, got {fun.rank_label}")
        rep = verify_step(fun, args.depth)
    elif args.which == "improper":
        if fun.node_kind != LIMIT:
            raise UsageError(f"--which improper needs a limit rank, got {fun.rank_label}")
        rep = verify_improper(fun, args.N)
    elif args.which == "ftc":
        rep = ftc_spotcheck(fun, args.samples, args.h, args.depth, args.seed)
    else:
        cert = rank_certify(fun, args.max_probe)
        _emit(cert.to_json(), out)
        ok = cert.vanish_level == fun.rank_label + 1 and {fun.a, fun.b} <= cert.members_at(fun.rank_label)
        return EXIT_OK if ok else EXIT_FAIL
    _emit(rep.to_json(), out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify(args, out):
    p = parse_poly(args.p)
    cls = classify_kernel(p) if args.q is None else classify_basic(p, parse_poly(args.q))
    out.write(f"{cls}\n")
    return EXIT_OK


def cmd_decide(args, out):
    text = args.sentence_opt or args.sentence
    if not text:
        raise UsageError("give a sentence")
    value = decide(text, module=args.module, budget=args.budget)
    out.write("true\n" if value else "false\n")
    return EXIT_OK if value else EXIT_FAIL


def cmd_gaps(args, out):
    fun = _function(args)
    if args.set == "cantor":
        S, notes = cantor(fun.interval), []
    else:
        S, notes = derivative_step(fun, full(fun.interval), args.depth)
    obj = skeleton_json(S, args.depth)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["lo", "hi"])
        w.writerows(obj["gaps"])
        return EXIT_OK
    obj["annotations"] = [n.to_json() for n in notes]
    _emit(obj, out)
    return EXIT_OK


def _function_options(p):
    p.add_argument("--descriptor", help="descriptor JSON text or path to a JSON file")
    p.add_argument("--rank", help="ordinal in Cantor normal form, e.g. w+1 or w^2*3")
    p.add_argument("--interval", nargs=2, default=["0", "1"], metavar=("A", "B"))
    p.add_argument("--r", default="1", help="target oscillation (rational)")


def _global_options(p, default):
    p.add_argument("--depth", type=int, default=default, help=f"evaluation depth (default 4, at most {DEPTH_CAP})")
    p.add_argument("--seed", type=int, default=default, help="random seed (default 0)")
    p.add_argument("--format", choices=["json", "csv"], default=default, help="output format for sample and gaps")
    p.add_argument("--budget", type=int, default=default, help="clause limit for the decision procedure (default 4096)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="denjoy", description="Construct, evaluate and certify Denjoy-integrable functions of given rank, and decide sentences about C, L1, Den as Q[X]-modules.")
    _global_options(ap, argparse.SUPPRESS)
    ap.set_defaults(depth=4, seed=0, format=None, budget=4096)
    common = _Parser(add_help=False)
    # the same flags are accepted after the subcommand
    _global_options(common, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", parents=[common], help="print the descriptor of build_rank(rank, interval, r)")
    p.add_argument("--rank", required=True)
    p.add_argument("--interval", nargs=2, default=["0", "1"], metavar=("A", "B"))
    p.add_argument("--r", default="1")
    p.add_argument("--out", help="write the descriptor to this file")
    p.set_defaults(run=cmd_build)

    p = sub.add_parser("sample", parents=[common], help="CSV of f and F enclosures on a uniform grid")
    _function_options(p)
    p.add_argument("--grid", type=int, default=16)
    p.set_defaults(run=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="run a verification and print a JSON report")
    _function_options(p)
    p.add_argument("--which", choices=["step", "improper", "ftc", "rank"], required=True)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--h", default="1/1024")
    p.add_argument("--max-probe", type=int, default=4)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="class of {x : exists y, p x + q y = 0}, or of ker p without --q")
    p.add_argument("--p", required=True)
    p.add_argument("--q")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("decide", parents=[common], help="decide a sentence; prints true or false")
    p.add_argument("sentence", nargs="?")
    p.add_argument("--sentence", dest="sentence_opt")
    p.add_argument("--module", choices=["C", "L1", "Den"], default="Den")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("gaps", parents=[common], help="gap list of the Cantor set or of one derivative step")
    _function_options(p)
    p.add_argument("--set", choices=["cantor", "derivative"], default="derivative")
    p.set_defaults(run=cmd_gaps)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if not 0 <= args.depth <= DEPTH_CAP:
            raise UsageError(f"--depth must be between 0 and {DEPTH_CAP}")
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        return args.run(args, out)
    except BudgetExceeded as e:
        print(f"denjoy: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, OrdinalError, ParseError, DecideError, ValueError, TypeError, KeyError, OSError) as e:
        print(f"denjoy: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
