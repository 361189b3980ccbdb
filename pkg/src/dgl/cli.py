"""Command-line front end.

Subcommands: ``subst`` applies a substitution table to a formula file,
``fv``/``bv`` print variable sets, ``check`` runs the proof checker,
``fuzz`` differential-tests the two engines, ``oracle`` runs semantic
evaluation campaigns, and ``bench`` emits scaling measurements as CSV.

Exit codes: 0 success, 1 error, 2 clash, 64 usage, 66 missing file.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import families, kernel, semantics, subst
from .church import church_formula
from .generators import (
    random_fo_usubst, random_formula, random_interpretation, random_qff,
    random_state, random_taboo, random_term, random_usubst,
)
from .parser import ParseError, parse_kind, parse_subst
from .printer import pretty
from .statics import bv_game, fv_formula, fv_game, fv_term
from .subst import BV_OPT, ClashError, SubstError, TWO_PASS, us
from .varset import ALL, EMPTY, Variable, VarSet

EX_OK, EX_ERROR, EX_CLASH, EX_USAGE, EX_NOFILE = 0, 1, 2, 64, 66


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FileNotFoundError(str(exc)) from None


def _parse_taboo(text: str) -> VarSet:
    if text == "all":
        return ALL
    names = [s for s in text.split(",") if s]
    return VarSet.finite(Variable(n.rstrip("'"), n.count("'")) for n in names)


def _input_text(value: str) -> str:
    """A literal expression, or the contents of a file naming one."""
    if os.path.exists(value) or value.endswith((".dgl", ".sig")):
        return _read(value).strip()
    return value


# ---------------------------------------------------------------------------
# subcommands


def _cmd_subst(args) -> int:
    sigma = parse_subst(_read(args.sigma).strip())
    phi = parse_kind(_read(args.input).strip(), "formula")
    taboo = _parse_taboo(args.taboo) if args.taboo else EMPTY
    loop_mode = BV_OPT if args.loop_opt == "bv" else TWO_PASS
    try:
        if args.engine == "church":
            if not taboo.is_empty:
                print("error: the church engine takes no input taboo",
                      file=sys.stderr)
                return EX_ERROR
            out = church_formula(sigma, phi)
        else:
            out = subst.subst_formula(sigma, taboo, phi, loop_mode=loop_mode)
    except ClashError as exc:
        print(str(exc.info))
        return EX_CLASH
    print(pretty(out))
    return EX_OK


def _cmd_fv(args) -> int:
    text = _input_text(args.input)
    obj = parse_kind(text, args.kind)
    if args.kind == "term":
        print(f"fv={fv_term(obj)}")
    elif args.kind == "formula":
        print(f"fv={fv_formula(obj)}")
    else:
        print(f"fv={fv_game(obj)} bv={bv_game(obj)}")
    return EX_OK


def _cmd_bv(args) -> int:
    obj = parse_kind(_input_text(args.input), "game")
    print(f"bv={bv_game(obj)}")
    return EX_OK


def _cmd_check(args) -> int:
    report = kernel.check_text(_read(args.script))
    print(report)
    return EX_OK if report.accepted else EX_ERROR


def _cmd_fuzz(args) -> int:
    only_onepass = only_church = both = clashes = 0
    findings = []
    for i in range(args.trials):
        rng = random.Random(f"{args.seed}:{i}")
        sigma = random_usubst(rng)
        phi = random_formula(rng, args.depth)
        try:
            one = us(sigma, phi)
            one_ok = True
        except ClashError:
            one_ok = False
        try:
            ref = church_formula(sigma, phi)
            ref_ok = True
        except ClashError:
            ref_ok = False
        if one_ok and ref_ok:
            both += 1
            if one != ref:
                print(f"result mismatch at trial {i}:", file=sys.stderr)
                print(f"  input: {pretty(phi)}", file=sys.stderr)
                print(f"  sigma: {sigma}", file=sys.stderr)
                return EX_ERROR
        elif one_ok != ref_ok:
            findings.append(i)
            engine = "church" if one_ok else "onepass"
            os.makedirs(args.out, exist_ok=True)
            base = os.path.join(args.out, f"trial{i:06d}")
            with open(base + ".dgl", "w", encoding="utf-8") as fh:
                fh.write(pretty(phi) + "\n")
            with open(base + ".sig", "w", encoding="utf-8") as fh:
                fh.write(f"{sigma}\n# clashes only under {engine}\n")
        else:
            clashes += 1
    print(f"fuzz: {args.trials} trials, {both} agreed, {clashes} clashed on "
          f"both engines, {len(findings)} definedness mismatches"
          + (f" (repros in {args.out}/)" if findings else ""))
    return EX_OK


def _cmd_oracle(args) -> int:
    failures = 0
    checked = skipped = 0
    for i in range(args.trials):
        rng = random.Random(f"{args.seed}:term:{i}")
        interp = random_interpretation(rng)
        omega = random_state(rng)
        sigma = random_fo_usubst(rng, qff=True)
        taboo = random_taboo(rng)
        t = random_term(rng, args.depth)
        rep = semantics.check_substitution_value_term(
            sigma, taboo, t, interp, omega, rng)
        checked += rep.trials
        if rep.trials == 0:
            skipped += 1
        if not rep.passed:
            failures += 1
            print(f"term trial {i} failed: {rep.counterexample}", file=sys.stderr)
    for i in range(args.qff_trials):
        rng = random.Random(f"{args.seed}:qff:{i}")
        interp = random_interpretation(rng)
        omega = random_state(rng)
        sigma = random_fo_usubst(rng, qff=True)
        taboo = random_taboo(rng)
        f = random_qff(rng, args.depth)
        rep = semantics.check_substitution_value_qff(
            sigma, taboo, f, interp, omega, rng)
        checked += rep.trials
        if rep.trials == 0:
            skipped += 1
        if not rep.passed:
            failures += 1
            print(f"qff trial {i} failed: {rep.counterexample}", file=sys.stderr)
    total = args.trials + args.qff_trials
    print(f"oracle: {total} trials, {checked} variations checked, "
          f"{skipped} clashed (vacuous), {failures} failures")
    return EX_OK if failures == 0 else EX_ERROR


def _cmd_bench(args) -> int:
    fams = args.families.split(",")
    ns = [int(s) for s in args.ns.split(",")]
    engines = args.engines.split(",")
    records, truncated = families.run_bench(fams, ns, engines,
                                            reps=args.reps,
                                            budget_s=args.budget)
    lines = [families.CSV_HEADER] + [r.csv() for r in records]
    out = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if truncated:
        print("bench: time budget exhausted, results truncated", file=sys.stderr)
    if args.fit:
        for family in fams:
            for engine in engines:
                try:
                    slope, r2 = families.fit_slope(records, family, engine)
                except ValueError as exc:
                    print(f"fit {family}/{engine}: {exc}", file=sys.stderr)
                    continue
                print(f"fit {family}/{engine}: slope={slope:.3f} r2={r2:.4f}",
                      file=sys.stderr)
    return EX_OK


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> _ArgumentParser:
    top = _ArgumentParser(prog="dgl")
    sub = top.add_subparsers(dest="command")

    p = sub.add_parser("subst", help="apply a substitution to a formula")
    p.add_argument("--sigma", required=True, help="substitution table (.sig)")
    p.add_argument("--input", required=True, help="formula file (.dgl)")
    p.add_argument("--taboo", default=None, help="comma list of variables, or 'all'")
    p.add_argument("--engine", choices=("onepass", "church"), default="onepass")
    p.add_argument("--loop-opt", choices=("bv",), default=None)
    p.set_defaults(fn=_cmd_subst)

    p = sub.add_parser("fv", help="free variables of an expression")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=("term", "formula", "game"), default="formula")
    p.set_defaults(fn=_cmd_fv)

    p = sub.add_parser("bv", help="bound variables of a game")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_bv)

    p = sub.add_parser("check", help="check a proof script")
    p.add_argument("script")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("fuzz", help="differential-test the two engines")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=7)
    p.add_argument("--out", default="fuzz-repros")
    p.set_defaults(fn=_cmd_fuzz)

    p = sub.add_parser("oracle", help="run semantic evaluation campaigns")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--qff-trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("bench", help="scaling measurements, CSV to stdout")
    p.add_argument("--families", default="seq")
    p.add_argument("--ns", default=",".join(str(2 ** k) for k in range(8, 16)))
    p.add_argument("--engines", default="onepass,church")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--budget", type=float, default=None,
                   help="wall-clock budget in seconds")
    p.add_argument("--out", default=None, help="CSV output file")
    p.add_argument("--fit", action="store_true",
                   help="print log-log slope fits to stderr")
    p.set_defaults(fn=_cmd_bench)
    return top


def run_cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "fn", None):
            parser.print_usage(sys.stderr)
            return EX_USAGE
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except FileNotFoundError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EX_NOFILE
    except (ParseError, SubstError, kernel.ProofError,
            semantics.EvalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_ERROR


def main() -> None:
    sys.exit(run_cli())
