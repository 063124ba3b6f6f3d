#!/usr/bin/env python3
"""Effect-size survey for the preprocessing passes.

Runs the pipeline over a fuzz corpus and aggregates, per pass: how
often it changed anything, what it removed, shortened, or added, and
how much wall time it took. Useful for judging whether a pass earns
its place in the default schedule on a given shape of formula.

Example:
    python3 scripts/pass_stats.py --count 2000
    python3 scripts/pass_stats.py --count 500 --max-clauses 20
"""

import argparse
import sys

from dqprep import FuzzBounds, PipelineConfig, Verdict, fuzz, run_pipeline


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=1000)
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
    verdicts = {Verdict.SAT: 0, Verdict.UNSAT: 0, Verdict.UNKNOWN: 0}
    totals = {}
    applications = {}
    effective = {}
    for formula in fuzz(args.seed, args.count, bounds):
        _, reports, verdict = run_pipeline(config, formula)
        verdicts[verdict] += 1
        for report in reports:
            entry = totals.setdefault(report.name, {
                "clauses_removed": 0, "clauses_shortened": 0,
                "units_added": 0, "equivalences_added": 0,
                "conflicts": 0, "wall_time": 0.0})
            applications[report.name] = applications.get(report.name, 0) + 1
            if report.changed:
                effective[report.name] = effective.get(report.name, 0) + 1
            entry["clauses_removed"] += report.clauses_removed
            entry["clauses_shortened"] += report.clauses_shortened
            entry["units_added"] += report.units_added
            entry["equivalences_added"] += report.equivalences_added
            entry["conflicts"] += report.conflicts
            entry["wall_time"] += report.wall_time
    print(f"formulas={args.count} seed={args.seed} sat={verdicts[Verdict.SAT]} "
          f"unsat={verdicts[Verdict.UNSAT]} unknown={verdicts[Verdict.UNKNOWN]}")
    header = (f"{'pass':>8} {'runs':>7} {'hits':>7} {'removed':>8} "
              f"{'shorter':>8} {'units':>7} {'equivs':>7} {'confl':>6} {'secs':>8}")
    print(header)
    for name in config.passes:
        if name not in totals:
            continue
        entry = totals[name]
        print(f"{name:>8} {applications[name]:>7} {effective.get(name, 0):>7} "
              f"{entry['clauses_removed']:>8} {entry['clauses_shortened']:>8} "
              f"{entry['units_added']:>7} {entry['equivalences_added']:>7} "
              f"{entry['conflicts']:>6} {entry['wall_time']:>8.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
