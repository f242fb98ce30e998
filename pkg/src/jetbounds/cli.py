"""Command-line front end: ``jetbounds {bound,table,class,vanishing,pieri,graded}``.

Exit status is 0 on success, 1 on usage errors and 2 when a computation hits
its resource ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .morse import MAX_TERMS_ENV, ComputationTooLarge, MorseResult, compute_bound, default_max_terms, morse_class
from .schur import Partition, VerificationTooLarge, graded_pieces, pieri, verify_theorem1

EXIT_USAGE = 1
EXIT_COMPUTATION = 2
TABLE_ORDERS = range(1, 6)
ABSENT = "−"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--parallel", type=_positive, default=1, help="worker processes (table only)")
    common.add_argument(
        "--max-terms",
        type=_positive,
        default=None,
        help=f"coefficient ceiling for one cell (default {default_max_terms()}, env {MAX_TERMS_ENV})",
    )

    parser = _Parser(prog="jetbounds", description="Effective degree bounds for invariant jet differentials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", parents=[common], help="Morse class, d-polynomial and degree bound")
    p.add_argument("-n", "--dim", type=int, required=True)
    p.add_argument("-k", "--order", type=int, required=True)

    p = sub.add_parser("class", parents=[common], help="the Morse class in c and h")
    p.add_argument("-n", "--dim", type=int, required=True)
    p.add_argument("-k", "--order", type=int, required=True)

    p = sub.add_parser("table", parents=[common], help="degree bounds for n = 2..max-n, k = 1..5")
    p.add_argument("--max-n", type=int, default=5)

    p = sub.add_parser("vanishing", parents=[common], help="Schur vanishing check of E^GG_{k,m}")
    p.add_argument("-n", "--dim", type=int, required=True)
    p.add_argument("-k", "--order", type=_positive, required=True)
    p.add_argument("-m", "--m", type=_positive, required=True)
    p.add_argument("--ambient", type=int, default=None, help="N of P^N (default n + 1)")

    p = sub.add_parser("pieri", parents=[common], help="Pieri rule Gamma^lambda (x) S^m")
    p.add_argument("partition", help="comma-separated parts, e.g. 3,1,1")
    p.add_argument("-m", "--m", type=_nonnegative, required=True)
    p.add_argument("-n", "--dim", type=_positive, required=True)

    p = sub.add_parser("graded", parents=[common], help="graded pieces l with l_1 + 2 l_2 + ... + k l_k = m")
    p.add_argument("-k", "--order", type=_positive, required=True)
    p.add_argument("-m", "--m", type=_nonnegative, required=True)
    return parser


def _check_cell(n: int, k: int) -> None:
    if n < 2:
        raise UsageError(f"dimension must be at least 2, got {n}")
    if k < 1:
        raise UsageError(f"order must be at least 1, got {k}")


def _table_cell(args):
    n, k, max_terms = args
    try:
        return compute_bound(n, k, max_terms=max_terms).to_json()
    except ComputationTooLarge as exc:
        return {"n": n, "k": k, "error": str(exc)}


def cmd_bound(args, out) -> int:
    _check_cell(args.dim, args.order)
    result = compute_bound(args.dim, args.order, max_terms=args.max_terms)
    if args.format == "json":
        print(json.dumps(result.to_json()), file=out)
    else:
        print(result.render(), file=out)
    return 0


def cmd_class(args, out) -> int:
    _check_cell(args.dim, args.order)
    cls = morse_class(args.dim, args.order, max_terms=args.max_terms)
    if args.format == "json":
        print(json.dumps({"n": args.dim, "k": args.order, "class": str(cls)}), file=out)
    else:
        print(cls, file=out)
    return 0


def cmd_table(args, out) -> int:
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    jobs = [(n, k, args.max_terms) for n in range(2, args.max_n + 1) for k in TABLE_ORDERS]
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            cells = list(pool.map(_table_cell, jobs))
    else:
        cells = [_table_cell(job) for job in jobs]
    failed = any("error" in cell for cell in cells)
    if args.format == "json":
        print(json.dumps({"max_n": args.max_n, "orders": list(TABLE_ORDERS), "cells": cells}), file=out)
    else:
        width = 8
        print("n \\ k".ljust(width) + "".join(str(k).rjust(width) for k in TABLE_ORDERS), file=out)
        for n in range(2, args.max_n + 1):
            row = [cell for cell in cells if cell["n"] == n]
            shown = []
            for cell in row:
                if "error" in cell:
                    shown.append("FAIL")
                elif cell["bound"] is None:
                    shown.append(ABSENT)
                else:
                    shown.append(str(cell["bound"]))
            print(str(n).ljust(width) + "".join(s.rjust(width) for s in shown), file=out)
        for cell in cells:
            if "error" in cell:
                print(f"({cell['n']}, {cell['k']}): {cell['error']}", file=out)
    return EXIT_COMPUTATION if failed else 0


def cmd_vanishing(args, out) -> int:
    if args.dim < 1:
        raise UsageError("dimension must be at least 1")
    if args.ambient is not None and args.ambient <= args.dim:
        raise UsageError("--ambient must exceed the dimension")
    report = verify_theorem1(args.dim, args.order, args.m, N=args.ambient)
    if args.format == "json":
        print(json.dumps(report.to_json()), file=out)
    else:
        print(report.render(), file=out)
    return 0


def cmd_pieri(args, out) -> int:
    try:
        lam = Partition.parse(args.partition)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if len(lam) > args.dim:
        raise UsageError(f"partition {lam} has more than {args.dim} parts")
    result = pieri(lam, args.m, args.dim)
    items = sorted(result.items(), reverse=True)
    if args.format == "json":
        print(json.dumps([[str(mu), mult] for mu, mult in items]), file=out)
    else:
        for mu, mult in items:
            print(f"{mult} x ({mu})", file=out)
    return 0


def cmd_graded(args, out) -> int:
    pieces = graded_pieces(args.order, args.m)
    if args.format == "json":
        print(json.dumps([list(p.ell) for p in pieces]), file=out)
    else:
        print(" ".join(str(p) for p in pieces), file=out)
    return 0


COMMANDS = {
    "bound": cmd_bound,
    "class": cmd_class,
    "table": cmd_table,
    "vanishing": cmd_vanishing,
    "pieri": cmd_pieri,
    "graded": cmd_graded,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"jetbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComputationTooLarge, VerificationTooLarge) as exc:
        print(f"jetbounds: computation too large: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
