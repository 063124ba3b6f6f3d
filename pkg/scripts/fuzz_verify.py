#!/usr/bin/env python3
"""Differential soundness experiment.

Runs the full pipeline over a stream of random formulas and checks
every verdict against the brute-force oracle: SAT/UNSAT verdicts must
match the oracle exactly, UNKNOWN outputs must be equi-satisfiable
with their inputs. Instances whose candidate space exceeds the oracle
budget are counted and skipped, never judged.

Example:
    python3 scripts/fuzz_verify.py --count 2000 --seed 11
    python3 scripts/fuzz_verify.py --count 500 --passes ur,up,vivify
"""

import argparse
import sys
import time

from dqprep import (BudgetError, FuzzBounds, PipelineConfig, Verdict,
                    equisatisfiable, fuzz, run_pipeline, solve_brute)


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=1000,
                        help="number of random formulas (default 1000)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--passes", default=None,
                        help="comma-separated pass list (default: all)")
    parser.add_argument("--max-universals", type=int, default=3)
    parser.add_argument("--max-existentials", type=int, default=3)
    parser.add_argument("--max-clauses", type=int, default=8)
    parser.add_argument("--max-clause-width", type=int, default=4)
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    kwargs = {}
    if args.passes:
        kwargs["passes"] = tuple(p.strip() for p in args.passes.split(","))
    config = PipelineConfig(**kwargs)
    bounds = FuzzBounds(args.max_universals, args.max_existentials,
                        args.max_clauses, args.max_clause_width)
    counts = {Verdict.SAT: 0, Verdict.UNSAT: 0, Verdict.UNKNOWN: 0}
    skipped = 0
    mismatches = 0
    start = time.perf_counter()
    for index, formula in enumerate(fuzz(args.seed, args.count, bounds)):
        out, _, verdict = run_pipeline(config, formula)
        counts[verdict] += 1
        try:
            satisfiable = solve_brute(formula).satisfiable
            if verdict is Verdict.SAT and not satisfiable:
                raise AssertionError("SAT verdict on unsatisfiable input")
            if verdict is Verdict.UNSAT and satisfiable:
                raise AssertionError("UNSAT verdict on satisfiable input")
            if verdict is Verdict.UNKNOWN and not equisatisfiable(formula, out):
                raise AssertionError("UNKNOWN output not equi-satisfiable")
        except BudgetError:
            skipped += 1
        except AssertionError as exc:
            mismatches += 1
            print(f"instance {index}: {exc}", file=sys.stderr)
    elapsed = time.perf_counter() - start
    print(f"formulas={args.count} seed={args.seed} elapsed={elapsed:.2f}s")
    print(f"sat={counts[Verdict.SAT]} unsat={counts[Verdict.UNSAT]} "
          f"unknown={counts[Verdict.UNKNOWN]} skipped={skipped}")
    if mismatches:
        print(f"FAIL: {mismatches} oracle mismatches", file=sys.stderr)
        return 1
    print("all verdicts agree with the oracle")
    return 0


if __name__ == "__main__":
    sys.exit(main())
