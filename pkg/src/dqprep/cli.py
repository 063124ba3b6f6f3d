"""Command-line front end.

Reads DQDIMACS from a file or standard input, runs the preprocessing
pipeline, and writes the preprocessed formula back out as DQDIMACS.
An unsatisfiable result is emitted as a single empty clause so the
output stays parseable. Statistics go to standard error as key=value
lines, or to a JSON file with --stats-json.

Exit codes: 0 preprocessed without a verdict, 10 satisfiable,
20 unsatisfiable, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .dqdimacs import emit_dqdimacs, parse_dqdimacs
from .errors import ContractViolation, ParseError, VerificationError
from .pipeline import (PASS_NAMES, FuzzBounds, PipelineConfig, Verdict, fuzz,
                       run_pipeline)
from .reports import PassReport

EXIT_UNKNOWN = 0
EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_USAGE = 1
EXIT_VERIFICATION = 2

_VERDICT_CODES = {
    Verdict.UNKNOWN: EXIT_UNKNOWN,
    Verdict.SAT: EXIT_SAT,
    Verdict.UNSAT: EXIT_UNSAT,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; we reserve 2 for
    # verification failures, so route usage problems through exit 1
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dqprep",
        description="Preprocess a DQBF in DQDIMACS form with reduction-aware "
                    "unit propagation, vivification, lookahead probing, and "
                    "redundancy elimination.")
    parser.add_argument("input", nargs="?",
                        help="input file; '-' or no argument reads standard input")
    parser.add_argument("--passes", default=",".join(PASS_NAMES), metavar="CSV",
                        help="comma-separated pass list out of "
                             f"{{{','.join(PASS_NAMES)}}} (default: all)")
    parser.add_argument("--max-rounds", type=int, default=10, metavar="N",
                        help="repeat the pass list up to N rounds (default 10)")
    parser.add_argument("--vivify-budget", type=int, default=10_000, metavar="N",
                        help="propagation steps granted per vivified clause")
    parser.add_argument("--verify", action="store_true",
                        help="cross-check every pass against the semantic oracle")
    parser.add_argument("--fuzz", type=int, metavar="N",
                        help="skip input; run the pipeline on N random formulas")
    parser.add_argument("--seed", type=int, default=0, metavar="N",
                        help="random seed for --fuzz (default 0)")
    parser.add_argument("--out", metavar="PATH",
                        help="write the preprocessed formula here instead of stdout")
    parser.add_argument("--stats-json", metavar="PATH",
                        help="write statistics as JSON to PATH instead of stderr")
    parser.add_argument("--oracle-budget", type=int, default=20, metavar="N",
                        help="oracle work cap as an exponent (default 20)")
    parser.add_argument("--upla-existential-only", action="store_true",
                        help="restrict lookahead probing to existential variables")
    return parser


def _emit_stats(stats: dict[str, object], reports: list[PassReport],
                path: str | None) -> None:
    if path is not None:
        payload = dict(stats)
        payload["passes"] = [r.as_dict() for r in reports]
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
        return
    for key, value in stats.items():
        print(f"{key}={value}", file=sys.stderr)
    totals: dict[str, PassReport] = {}
    for report in reports:
        merged = totals.setdefault(report.name, PassReport(report.name))
        merged.clauses_removed += report.clauses_removed
        merged.clauses_shortened += report.clauses_shortened
        merged.units_added += report.units_added
        merged.equivalences_added += report.equivalences_added
        merged.conflicts += report.conflicts
        merged.wall_time += report.wall_time
    for name, merged in totals.items():
        for key, value in merged.as_dict().items():
            if key == "name":
                continue
            if key == "wall_time":
                value = f"{merged.wall_time:.6f}"
            print(f"{name}.{key}={value}", file=sys.stderr)


def _run_fuzz(args: argparse.Namespace, config: PipelineConfig) -> int:
    counts = {Verdict.SAT: 0, Verdict.UNSAT: 0, Verdict.UNKNOWN: 0}
    reports: list[PassReport] = []
    for formula in fuzz(args.seed, args.fuzz, FuzzBounds()):
        try:
            _, formula_reports, verdict = run_pipeline(config, formula)
        except VerificationError as exc:
            print(f"dqprep: {exc}", file=sys.stderr)
            return EXIT_VERIFICATION
        counts[verdict] += 1
        reports.extend(formula_reports)
    stats: dict[str, object] = {
        "formulas": args.fuzz,
        "seed": args.seed,
        "sat": counts[Verdict.SAT],
        "unsat": counts[Verdict.UNSAT],
        "unknown": counts[Verdict.UNKNOWN],
    }
    _emit_stats(stats, reports, args.stats_json)
    return EXIT_UNKNOWN


def _run_file(args: argparse.Namespace, config: PipelineConfig) -> int:
    if args.input in (None, "-"):
        text = sys.stdin.read()
        source_name = "<stdin>"
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            print(f"dqprep: cannot read {args.input}: {exc.strerror}",
                  file=sys.stderr)
            return EXIT_USAGE
        source_name = args.input
    try:
        parsed = parse_dqdimacs(text)
    except ParseError as exc:
        print(f"dqprep: {source_name}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for diagnostic in parsed.diagnostics:
        print(f"dqprep: {source_name}: line {diagnostic.line}: "
              f"{diagnostic.severity}: {diagnostic.message}", file=sys.stderr)
    try:
        result, reports, verdict = run_pipeline(config, parsed.formula)
    except VerificationError as exc:
        print(f"dqprep: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    output = emit_dqdimacs(result)
    if args.out is None:
        sys.stdout.write(output)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(output)
    stats: dict[str, object] = {
        "verdict": verdict.value,
        "input_clauses": len(parsed.formula.matrix),
        "output_clauses": len(result.matrix),
        "wall_time": f"{sum(r.wall_time for r in reports):.6f}",
    }
    _emit_stats(stats, reports, args.stats_json)
    return _VERDICT_CODES[verdict]


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.fuzz is not None and args.input is not None:
            parser.error("--fuzz and an input path are mutually exclusive")
        if args.fuzz is not None and args.fuzz < 0:
            parser.error("--fuzz needs a non-negative count")
        config = PipelineConfig(
            passes=tuple(p.strip() for p in args.passes.split(",") if p.strip()),
            max_rounds=args.max_rounds,
            vivify_budget=args.vivify_budget,
            verify=args.verify,
            seed=args.seed,
            budget=args.oracle_budget,
            upla_existential_only=args.upla_existential_only)
    except _UsageError as exc:
        print(f"dqprep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"dqprep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.fuzz is not None:
        return _run_fuzz(args, config)
    return _run_file(args, config)


def console_main() -> None:
    sys.exit(main())
