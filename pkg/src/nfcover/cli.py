"""Command-line interface: ``nfcover {verify,analyze,map,construct}``.

Exit codes: 0 success/exact, 1 domain-negative result, 2 input error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from .constructor import default_prime_pool, random_system
from .covering import analyze, class_to_cell, verify_exact
from .errors import CapExceededError, NotExactError, UnsupportedPrimeError
from .ideal import DEFAULT_CAP
from .number_field import make_quadratic_field, make_rationals
from .residues import CrtContext, map_f, map_f_bar
from .serialize import InputError, system_from_json, system_to_json

log = logging.getLogger("nfcover")

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    return system_from_json(doc)


def _fmt_ideal(hnf) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in hnf) + "]"


def _fmt_factorization(fac) -> str:
    if not fac:
        return "(1)"
    return " ".join(f"{_fmt_ideal(f['hnf'])}^{f['exponent']}" for f in fac)


def cmd_verify(args) -> int:
    system = _load(args.input)
    verdict = verify_exact(system, args.cap)
    if args.json:
        print(json.dumps({"verdict": verdict.kind,
                          "witness": None if verdict.witness is None else list(verdict.witness),
                          "classes": list(verdict.indices)}))
    else:
        print(verdict)
    return EXIT_OK if verdict.is_exact else EXIT_NEGATIVE


def cmd_analyze(args) -> int:
    system = _load(args.input)
    try:
        report = analyze(system, args.cap)
    except NotExactError as exc:
        print(exc.verdict)
        return EXIT_NEGATIVE
    if args.json:
        print(json.dumps(report, indent=2))
        return EXIT_OK
    F = system.field
    print(f"field: {report['field']}")
    mod = report["modulus"]
    print(f"modulus I: {_fmt_ideal(mod['hnf'])}  norm {mod['norm']}  "
          f"= {_fmt_factorization(mod['factorization'])}")
    print(f"parallelotope P(n;b): b = {tuple(report['parallelotope'])}")
    print(f"parallelotope P(l;d): d = {tuple(report['bar_parallelotope'])}")
    print()
    header = ["#", "rep", "modulus", "norm", "div-max", "count", "t1", "t2", "ok", "cell", "index"]
    rows = []
    for c in report["classes"]:
        ok = c["theorem1_satisfied"] and c["theorem2_satisfied"]
        rows.append([
            str(c["index"]), F.format(c["rep"]), _fmt_ideal(c["modulus_hnf"]), str(c["norm"]),
            "yes" if c["division_maximal"] else "no", str(c["repetition_count"]),
            str(c["theorem1_bound"]), str(c["theorem2_bound"]), "yes" if ok else "NO",
            "(" + ", ".join("*" if u is None else str(u) for u in c["cell"]) + ")",
            "{" + ", ".join(str(i) for i in c["index_set"]) + "}",
        ])
    widths = [max(len(r[k]) for r in rows + [header]) for k in range(len(header))]
    for r in [header] + rows:
        print("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    print()
    for e in report["lemma1"]:
        idx = "{" + ", ".join(str(i) for i in e["index_set"]) + "}"
        print(f"lemma1: cell {e['cell']} index {idx}: b = {e['b']}, count = {e['count']}"
              f" {'ok' if e['ok'] else 'VIOLATED'}")
    if report["violations"]:
        print(f"summary: {report['violations']} bound violation(s) -- implementation defect")
        return EXIT_NEGATIVE
    print("summary: all bounds satisfied")
    return EXIT_OK


def cmd_map(args) -> int:
    system = _load(args.input)
    ctx = CrtContext(system.field, system.modulus, args.cap, system.factorization)
    print(f"# b = {ctx.bounds}\td = {ctx.bar_bounds}")
    print("# residue\tf\tf_bar")
    for x in ctx.residues():
        print(f"{list(x)}\t{map_f(ctx, x)}\t{map_f_bar(ctx, x)}")
    print("# class\trep\tcell\tindex_set")
    for i, c in enumerate(system.classes):
        cell = class_to_cell(ctx, c)
        idx = "{" + ", ".join(str(k) for k in sorted(cell.index_set)) + "}"
        print(f"{i}\t{list(c.rep)}\t{cell.pattern()}\t{idx}")
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.field == "rationals":
        F = make_rationals()
    else:
        if args.d is None:
            raise InputError("--d is required for a quadratic field")
        try:
            F = make_quadratic_field(args.d)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    pool = default_prime_pool(F, args.primes)
    result = random_system(F, args.seed, args.steps, pool, args.cap, args.max_classes)
    if result.truncated:
        log.warning("generation stopped early: no admissible split within the cap")
    print(json.dumps(system_to_json(result.system)))
    return EXIT_OK


def _primes(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nfcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True):
        p.add_argument("input", help="JSON system description")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max residues to enumerate")
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable output")

    common(sub.add_parser("verify", help="check that a system is an exact covering"))
    common(sub.add_parser("analyze", help="repetition bounds and cell partition report"))
    common(sub.add_parser("map", help="dump the digit maps f and f_bar"), json_flag=False)

    p = sub.add_parser("construct", help="generate a random exact covering system")
    p.add_argument("--field", choices=("rationals", "quadratic"), default="rationals")
    p.add_argument("--d", type=int, help="squarefree d for Q(sqrt(d))")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("--primes", type=_primes, default=[2, 3],
                   help="rational primes whose prime ideals may be used (comma separated)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--max-classes", type=int, default=None)
    return parser


COMMANDS = {"verify": cmd_verify, "analyze": cmd_analyze, "map": cmd_map,
            "construct": cmd_construct}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InputError, UnsupportedPrimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
