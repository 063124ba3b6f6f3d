"""Pass scheduling, oracle-backed verification, and a formula fuzzer.

The pipeline applies a configured sequence of passes round after round
until a whole round changes nothing or the round cap is hit. Deriving
the empty clause settles the formula as unsatisfiable (the output is
normalized to exactly one empty clause so it stays emittable); an empty
matrix settles it as satisfiable. In verify mode every single pass
application is cross-checked against the semantic oracle, with budget
overruns logged and skipped rather than silently ignored.
"""

from __future__ import annotations

import enum
import logging
import random
import time
from collections.abc import Iterator
from dataclasses import dataclass

from . import oracle
from .dqdimacs import emit_dqdimacs
from .errors import BudgetError, ContractViolation, VerificationError
from .formula import TAUTOLOGY, Dqbf, Prefix, literal_key, normalize_clause
from .propagation import (PropagationOutcome, unit_propagate, universal_reduce,
                          universal_reduce_clause)
from .reports import PassReport
from .techniques import (DEFAULT_VIVIFY_BUDGET, dqrat_eliminate_pass,
                         upla_pass, vivify_pass)

log = logging.getLogger(__name__)

PASS_NAMES = ("ur", "up", "upla", "vivify", "dqrat")


class Verdict(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for one pipeline run. `budget` is the oracle's exponent
    bound and only matters in verify mode."""

    passes: tuple[str, ...] = PASS_NAMES
    max_rounds: int = 10
    vivify_budget: int = DEFAULT_VIVIFY_BUDGET
    verify: bool = False
    seed: int = 0
    budget: int = oracle.DEFAULT_BUDGET
    upla_existential_only: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "passes", tuple(self.passes))
        if not self.passes:
            raise ContractViolation("at least one pass is required")
        for name in self.passes:
            if name not in PASS_NAMES:
                raise ContractViolation(
                    f"unknown pass {name!r}; choose from {', '.join(PASS_NAMES)}")
        if self.max_rounds < 1:
            raise ContractViolation("max_rounds must be at least 1")
        if self.vivify_budget < 0 or self.budget < 0:
            raise ContractViolation("budgets must be non-negative")


def _run_ur(formula: Dqbf) -> tuple[Dqbf, PassReport, None]:
    report = PassReport("ur")
    after = universal_reduce(formula)
    report.clauses_shortened = sum(
        1 for c in formula.matrix
        if universal_reduce_clause(formula.prefix, c) != c)
    report.clauses_removed = max(0, len(formula.matrix) - len(after.matrix))
    if () in after.matrix and () not in formula.matrix:
        report.conflicts = 1
    return after, report, None


def _run_up(formula: Dqbf) -> tuple[Dqbf, PassReport, PropagationOutcome]:
    report = PassReport("up")
    outcome = unit_propagate(formula)
    if outcome.conflict:
        report.conflicts = 1
        return Dqbf(formula.prefix, ((),)), report, outcome
    after = outcome.result
    assert after is not None
    report.units_added = len(outcome.units)
    report.clauses_removed = max(0, len(formula.matrix) - len(after.matrix))
    return after, report, outcome


def _apply_pass(name: str, formula: Dqbf, config: PipelineConfig
                ) -> tuple[Dqbf, PassReport, PropagationOutcome | None]:
    if name == "ur":
        return _run_ur(formula)
    if name == "up":
        return _run_up(formula)
    if name == "upla":
        after, report = upla_pass(formula, config.upla_existential_only)
        return after, report, None
    if name == "vivify":
        after, report = vivify_pass(formula, config.vivify_budget)
        return after, report, None
    if name == "dqrat":
        after, report = dqrat_eliminate_pass(formula)
        return after, report, None
    raise ContractViolation(f"unknown pass {name!r}")


def _fail_verification(name: str, before: Dqbf, after: Dqbf, detail: str) -> None:
    raise VerificationError(
        f"{name} pass failed verification: {detail}\n"
        f"--- before ---\n{emit_dqdimacs(before)}"
        f"--- after ---\n{emit_dqdimacs(after)}")


def _verify_pass(name: str, before: Dqbf, after: Dqbf,
                 outcome: PropagationOutcome | None,
                 config: PipelineConfig) -> None:
    try:
        if name == "up":
            assert outcome is not None
            if outcome.conflict:
                if oracle.solve_brute(before, config.budget).satisfiable:
                    _fail_verification(name, before, after,
                                       "propagation conflict on a satisfiable formula")
            else:
                units = tuple((u,) for u in sorted(outcome.units, key=literal_key))
                with_units = Dqbf(before.prefix, before.matrix + units)
                if not oracle.equivalent(before, with_units, config.budget):
                    _fail_verification(name, before, after,
                                       "derived units are not implied")
                if not oracle.equisatisfiable(before, after, config.budget):
                    _fail_verification(name, before, after,
                                       "propagated formula changed satisfiability")
        elif name == "dqrat":
            if not oracle.equisatisfiable(before, after, config.budget):
                _fail_verification(name, before, after,
                                   "elimination changed satisfiability")
        else:
            if not oracle.equivalent(before, after, config.budget):
                _fail_verification(name, before, after,
                                   "pass is not equivalence-preserving")
    except BudgetError as exc:
        log.warning("verification of %s pass skipped: %s", name, exc)


def run_pipeline(config: PipelineConfig, formula: Dqbf
                 ) -> tuple[Dqbf, list[PassReport], Verdict]:
    """Run the configured passes to a round fixpoint or a verdict."""
    current = formula
    reports: list[PassReport] = []
    for _ in range(config.max_rounds):
        changed = False
        for name in config.passes:
            before = current
            start = time.perf_counter()
            current, report, outcome = _apply_pass(name, current, config)
            report.wall_time = time.perf_counter() - start
            reports.append(report)
            if config.verify:
                _verify_pass(name, before, current, outcome, config)
            if () in current.matrix:
                return Dqbf(current.prefix, ((),)), reports, Verdict.UNSAT
            if not current.matrix:
                return current, reports, Verdict.SAT
            if current != before:
                changed = True
        if not changed:
            break
    return current, reports, Verdict.UNKNOWN


# -- random formulas for the property suites --------------------------------


@dataclass(frozen=True)
class FuzzBounds:
    """Shape limits for generated formulas. Tight enough that all but
    the rarest draws fit the default oracle budget; harnesses filter
    the few that do not."""

    max_universals: int = 3
    max_existentials: int = 3
    max_clauses: int = 8
    max_clause_width: int = 4


def _random_formula(rng: random.Random, bounds: FuzzBounds) -> Dqbf:
    n_universal = rng.randint(0, bounds.max_universals)
    n_existential = rng.randint(0, bounds.max_existentials)
    universals = list(range(1, n_universal + 1))
    existentials = {}
    for i in range(n_existential):
        deps = frozenset(u for u in universals if rng.random() < 0.5)
        existentials[n_universal + 1 + i] = deps
    variables = universals + sorted(existentials)
    clauses = []
    if variables:
        for _ in range(rng.randint(0, bounds.max_clauses)):
            width = rng.randint(1, bounds.max_clause_width)
            lits = [rng.choice(variables) * rng.choice((1, -1))
                    for _ in range(width)]
            clause = normalize_clause(lits)
            if clause is not TAUTOLOGY:
                clauses.append(clause)
    prefix = Prefix(frozenset(universals), existentials)
    return Dqbf(prefix, tuple(clauses))


def fuzz(seed: int, count: int, bounds: FuzzBounds = FuzzBounds()) -> Iterator[Dqbf]:
    """Deterministic stream of `count` random formulas."""
    rng = random.Random(seed)
    for _ in range(count):
        yield _random_formula(rng, bounds)
