"""Command-line frontend: ``birat <command> MAP [flags]`` with JSON on stdout."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from .analysis import (AnalysisOptions, analyze, monomial_birationality_oracle, monomial_exponents,
                       smith_normal_form)
from .biratio import inverse_representative, is_birational, jacobian_dual, verify_inverse
from .corpus import corpus_names, resolve_map
from .errors import BiratError, EmptyLinearPart, ResourceLimit
from .groebner import budget_scope, ideal_power
from .rees import RationalMapDescriptor, rees_ideal
from .resolve import depth_of_quotient, ideal_betti, projective_dimension, regularity

EXIT_INPUT = 2
EXIT_BUDGET = 3


def _options(args) -> AnalysisOptions:
    return AnalysisOptions(r_max=args.r_max, trials=args.trials, seed=args.seed,
                           assume_three_proper_nonaligned=args.assume_three_proper_nonaligned,
                           rees_steps=args.rees_steps)


def cmd_analyze(F: RationalMapDescriptor, args) -> dict:
    return analyze(F, _options(args))


def cmd_bounds(F: RationalMapDescriptor, args) -> dict:
    report = analyze(F, _options(args))
    return {"map": report["map"], "ledger": report["ledger"], "notes": report["notes"]}


def cmd_inverse(F: RationalMapDescriptor, args) -> dict:
    try:
        dual = jacobian_dual(F)
    except EmptyLinearPart:
        return {"birational": False, "rank": 0, "n": F.n, "inverse": None,
                "note": "empty x-linear part"}
    verdict = is_birational(F, dual)
    out = {"birational": verdict.birational, "rank": verdict.rank, "n": F.n, "inverse": None}
    if verdict.birational:
        rep = inverse_representative(F, dual)
        out["inverse"] = {"forms": [str(g) for g in rep.forms], "degree": rep.degree,
                          "upper_estimate": rep.upper_estimate,
                          "verified": verify_inverse(F, rep.forms)}
    return out


def cmd_rees(F: RationalMapDescriptor, args) -> dict:
    P = rees_ideal(F)
    out = {"variables": list(P.ambient.variables)}
    out.update(P.to_json())
    return out


def cmd_betti(F: RationalMapDescriptor, args) -> dict:
    I = ideal_power(F.base_ideal(), args.power)
    bt = ideal_betti(I)
    return {"power": args.power, "betti": bt.to_json(), "regularity": regularity(bt),
            "projective_dimension": projective_dimension(bt),
            "depth": depth_of_quotient(bt, len(F.x_vars)),
            "linear": all(d[0] - i == regularity(bt) for i, d in bt.entries)}


def cmd_oracle(F: RationalMapDescriptor, args) -> dict:
    exps = monomial_exponents(F)
    rows = [[a - b for a, b in zip(e, exps[0])] for e in exps[1:]]
    return {"birational": monomial_birationality_oracle(F),
            "elementary_divisors": smith_normal_form(rows)}


COMMANDS = {
    "analyze": cmd_analyze,
    "inverse": cmd_inverse,
    "rees": cmd_rees,
    "betti": cmd_betti,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="birat", description="Birationality of rational maps.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("maps", nargs="+", metavar="MAP",
                       help="path to a map file, corpus:<name>, or corpus:all")
        p.add_argument("--r_max", "--r-max", type=int, default=3)
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--budget", type=int, default=None, help="S-pair budget per Groebner basis")
        p.add_argument("--rees-steps", type=int, default=AnalysisOptions.rees_steps,
                       help="reduction-step budget for the Rees ideal resolution")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--field-override", default=None, help="Q or Fp:<prime>")
        p.add_argument("--assume-three-proper-nonaligned", action="store_true")
        if name == "betti":
            p.add_argument("--power", type=int, default=1)
    return parser


def _expand(maps: List[str]) -> List[str]:
    out = []
    for m in maps:
        if m == "corpus:all":
            out.extend(f"corpus:{n}" for n in corpus_names())
        else:
            out.append(m)
    return out


def _run_one(command: str, ref: str, args) -> dict:
    F = resolve_map(ref, args.field_override)
    if args.budget is not None:
        with budget_scope(args.budget):
            return COMMANDS[command](F, args)
    return COMMANDS[command](F, args)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    refs = _expand(args.maps)
    try:
        if args.jobs > 1 and len(refs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                futures = [pool.submit(_run_one, args.command, s, args) for s in refs]
                results = [f.result() for f in futures]
        else:
            results = [_run_one(args.command, s, args) for s in refs]
    except ResourceLimit as exc:
        print(f"birat: resource limit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, KeyError, ValueError, json.JSONDecodeError, BiratError) as exc:
        print(f"birat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = results[0] if len(results) == 1 else {s: r for s, r in zip(refs, results)}
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
