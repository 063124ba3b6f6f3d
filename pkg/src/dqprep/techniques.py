"""Clause-level preprocessing built on reduction-aware propagation.

Three families of rewrites, all justified by probing. Vivification
shortens a clause when assuming the negation of a subset already
propagates to a conflict. Lookahead probes both polarities of a
variable and harvests forced literals, shared units, and variable
equivalences. Redundancy elimination deletes a clause, or drops a
universal literal from it, when every outer resolvent on a pivot
propagates to a conflict. Each probe abstracts away the universals the
tested literals may depend on; that abstraction is what keeps the
conclusions sound under a dependency prefix.

All passes return the rewritten formula together with a PassReport and
leave a formula that already contains the empty clause untouched: a
refutation is final, rewriting past it only churns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import CompatibilityError, ContractViolation, KernelUndefined
from .formula import (TAUTOLOGY, Clause, Dqbf, Prefix, dep, is_compatible,
                      literal_key, normalize_clause)
from .propagation import abstract, dqat_check, unit_propagate, universal_reduce_clause
from .reports import PassReport

DEFAULT_VIVIFY_BUDGET = 10_000  # propagation steps per clause


class VivifyKind(enum.Enum):
    REPLACED = "replaced"
    STRENGTHENED = "strengthened"
    UNCHANGED = "unchanged"


@dataclass(frozen=True)
class VivifyResult:
    """Outcome of vivifying one clause.

    REPLACED: new_clause is a proper subset of the original.
    STRENGTHENED: new_clause is a tested subset plus one literal the
    probe propagated.  UNCHANGED: new_clause is None.
    """

    kind: VivifyKind
    new_clause: Clause | None = None


def _literal_order(matrix: tuple[Clause, ...], clause: Clause) -> list[int]:
    # most frequent literal first, ties by variable id
    counts = {lit: 0 for lit in clause}
    for other in matrix:
        for lit in other:
            if lit in counts:
                counts[lit] += 1
    return sorted(clause, key=lambda lit: (-counts[lit], abs(lit)))


def vivify_clause(formula: Dqbf, clause: Clause,
                  budget: int = DEFAULT_VIVIFY_BUDGET) -> VivifyResult:
    """Try to shorten one clause of the formula.

    Subsets of the clause are grown literal by literal in a fixed order.
    For each proper subset, its literals are negated and added as unit
    clauses to the rest of the matrix, universals the subset may depend
    on are abstracted away, and the result is propagated. A conflict
    means the subset alone already carries the clause's content; a
    fixpoint whose units contain one of the remaining literals pins that
    literal down. The budget caps total propagation steps.
    """
    canon = normalize_clause(clause)
    if canon is TAUTOLOGY or canon not in formula.matrix:
        raise ContractViolation("clause to vivify must be in the matrix")
    if len(canon) < 2:
        return VivifyResult(VivifyKind.UNCHANGED)
    rest = tuple(c for c in formula.matrix if c != canon)
    order = _literal_order(formula.matrix, canon)
    steps_used = 0
    for size in range(len(canon)):
        if steps_used >= budget:
            return VivifyResult(VivifyKind.UNCHANGED)
        subset = order[:size]
        assumptions = tuple((-lit,) for lit in subset)
        probe = Dqbf(formula.prefix, rest + assumptions)
        outcome = unit_propagate(abstract(probe, dep(formula, subset)))
        steps_used += outcome.steps
        if outcome.conflict:
            result = normalize_clause(subset)
            assert result is not TAUTOLOGY
            return VivifyResult(VivifyKind.REPLACED, result)
        for lit in order[size:]:
            if lit in outcome.units:
                result = normalize_clause(subset + [lit])
                assert result is not TAUTOLOGY
                return VivifyResult(VivifyKind.STRENGTHENED, result)
    return VivifyResult(VivifyKind.UNCHANGED)


def vivify_pass(formula: Dqbf,
                budget: int = DEFAULT_VIVIFY_BUDGET) -> tuple[Dqbf, PassReport]:
    """Vivify every clause once, committing each change before the next
    clause is examined."""
    report = PassReport("vivify")
    if () in formula.matrix:
        return formula, report
    working = list(formula.matrix)
    i = 0
    while i < len(working):
        current = Dqbf(formula.prefix, tuple(working))
        result = vivify_clause(current, working[i], budget)
        if result.kind is VivifyKind.UNCHANGED or result.new_clause == working[i]:
            i += 1
            continue
        new_clause = result.new_clause
        assert new_clause is not None
        if new_clause == ():
            working[i] = new_clause
            report.conflicts += 1
            break
        report.clauses_shortened += 1
        if new_clause in working[:i] or new_clause in working[i + 1:]:
            working.pop(i)  # shortened into an existing clause
            continue
        working[i] = new_clause
        i += 1
    return Dqbf(formula.prefix, tuple(working)), report


@dataclass(frozen=True)
class UplaFindings:
    """What probing one variable in both polarities revealed.

    forced holds literals whose negation led to a conflict; both
    polarities forced signals unsatisfiability. common_units are
    propagated by both probes. equivalences pair the probed variable
    with a literal propagated positively on one side and negatively on
    the other.
    """

    forced: frozenset[int] = frozenset()
    common_units: frozenset[int] = frozenset()
    equivalences: frozenset[tuple[int, int]] = frozenset()

    @property
    def contradictory(self) -> bool:
        return any(-lit in self.forced for lit in self.forced)


def upla_probe(formula: Dqbf, var: int) -> UplaFindings:
    """Propagate the formula under var and under its negation, with the
    universals var may depend on abstracted away, and compare notes."""
    if var not in formula.prefix:
        raise CompatibilityError(f"variable {var} is not in the prefix")
    scope = dep(formula, var)
    outcomes = {}
    for lit in (var, -var):
        probe = Dqbf(formula.prefix, formula.matrix + ((lit,),))
        outcomes[lit] = unit_propagate(abstract(probe, scope))
    forced = set()
    if outcomes[var].conflict:
        forced.add(-var)
    if outcomes[-var].conflict:
        forced.add(var)
    if forced:
        return UplaFindings(forced=frozenset(forced))
    positive = outcomes[var].units
    negative = outcomes[-var].units
    equivalences = frozenset((var, lit) for lit in positive
                             if -lit in negative and abs(lit) != var)
    return UplaFindings(common_units=positive & negative,
                        equivalences=equivalences)


def upla_apply(formula: Dqbf, findings: UplaFindings) -> Dqbf:
    """Graft probe findings onto the formula as clauses."""
    if findings.contradictory:
        return Dqbf(formula.prefix, ((),))
    additions: list[tuple[int, ...]] = []
    for lit in sorted(findings.forced | findings.common_units, key=literal_key):
        additions.append((lit,))
    for var, lit in sorted(findings.equivalences):
        additions.append((-var, lit))
        additions.append((var, -lit))
    return Dqbf(formula.prefix, formula.matrix + tuple(additions))


def upla_pass(formula: Dqbf, existential_only: bool = False) -> tuple[Dqbf, PassReport]:
    """Probe every variable in ascending order, applying each probe's
    findings before the next probe runs."""
    report = PassReport("upla")
    if () in formula.matrix:
        return formula, report
    current = formula
    if existential_only:
        candidates = sorted(formula.prefix.existentials)
    else:
        candidates = sorted(formula.prefix.variables)
    for var in candidates:
        findings = upla_probe(current, var)
        if findings.contradictory:
            report.conflicts += 1
            current = Dqbf(current.prefix, ((),))
            break
        existing = set(current.matrix)
        for lit in findings.forced | findings.common_units:
            if (lit,) not in existing:
                report.units_added += 1
        for var_, lit in findings.equivalences:
            pair = {normalize_clause((-var_, lit)), normalize_clause((var_, -lit))}
            if pair - existing:
                report.equivalences_added += 1
        current = upla_apply(current, findings)
    return current, report


@dataclass(frozen=True)
class OuterSets:
    """Variables that may soundly appear in a resolvent partner.

    For a universal variable: dependents are the existentials that
    depend on it, independents the ones that do not, kernel the
    universals every dependent shares, and outer the kernel plus the
    independents confined to it. For an existential variable only outer
    is populated: every variable whose dependency closure fits inside
    its own.
    """

    outer: frozenset[int]
    dependents: frozenset[int] | None = None
    independents: frozenset[int] | None = None
    kernel: frozenset[int] | None = None


def outer_variables(prefix: Prefix, var: int) -> OuterSets:
    if var not in prefix:
        raise CompatibilityError(f"variable {var} is not in the prefix")
    if var in prefix.existentials:
        target = prefix.existentials[var]
        outer = set(target)  # universals it depends on
        outer |= {y for y, d in prefix.existentials.items() if d <= target}
        return OuterSets(outer=frozenset(outer))
    dependents = frozenset(y for y, d in prefix.existentials.items() if var in d)
    if not dependents:
        raise KernelUndefined(f"no existential depends on universal {var}")
    independents = frozenset(y for y in prefix.existentials if y not in dependents)
    kernel = frozenset.intersection(*(prefix.existentials[y] for y in dependents))
    outer = set(kernel) | {y for y in independents if prefix.existentials[y] <= kernel}
    return OuterSets(outer=frozenset(outer), dependents=dependents,
                     independents=independents, kernel=kernel)


def outer_resolvent(prefix: Prefix, first: Clause, second: Clause,
                    pivot: int) -> Clause | object:
    """Resolve two clauses on a pivot, keeping only the partner's
    literals over the pivot's outer variables. An existential pivot
    stays in the result with its complement removed; a universal pivot
    is removed from the first clause but its complement survives. The
    result may be TAUTOLOGY."""
    c = normalize_clause(first)
    d = normalize_clause(second)
    if c is TAUTOLOGY or d is TAUTOLOGY:
        raise ContractViolation("cannot resolve a tautological clause")
    if pivot not in c or -pivot not in d:
        raise ContractViolation(
            "pivot must occur in the first clause and negated in the second")
    sets = outer_variables(prefix, abs(pivot))
    outer_part = [lit for lit in d if abs(lit) in sets.outer]
    if abs(pivot) in prefix.existentials:
        merged = list(c) + [lit for lit in outer_part if lit != -pivot]
    else:
        merged = [lit for lit in c if lit != pivot] + outer_part
    return normalize_clause(merged)


def dqrat_plus_check(formula: Dqbf, clause: Clause, pivot: int) -> bool:
    """Is the clause redundant with respect to the formula on this pivot?

    Every clause of the matrix containing the negated pivot contributes
    an outer resolvent; tautological resolvents pass vacuously, every
    other resolvent must fail the addition test, that is, propagating
    its negation under abstraction must conflict. Raises KernelUndefined
    for a universal pivot no existential depends on.
    """
    canon = normalize_clause(clause)
    if canon is TAUTOLOGY:
        raise ContractViolation("clause under test must not be tautological")
    if pivot not in canon:
        raise ContractViolation("pivot must occur in the clause")
    if not is_compatible(formula, canon):
        raise CompatibilityError("clause uses variables outside the prefix")
    for partner in formula.matrix:
        if -pivot not in partner:
            continue
        resolvent = outer_resolvent(formula.prefix, canon, partner, pivot)
        if resolvent is TAUTOLOGY:
            continue
        if not dqat_check(formula, resolvent):
            return False
    return True


def dqrat_eliminate_pass(formula: Dqbf) -> tuple[Dqbf, PassReport]:
    """One elimination sweep over the matrix.

    Each clause is visited once against the rest of the current matrix.
    If some existential pivot certifies redundancy the clause is
    deleted; otherwise the first universal pivot that certifies lets its
    literal be dropped, after which the shortened clause is reduced
    again. Universal pivots nothing depends on are skipped. Changes
    commit immediately; a derived empty clause ends the sweep.
    """
    report = PassReport("dqrat")
    if () in formula.matrix:
        return formula, report
    prefix = formula.prefix
    depended = frozenset().union(*prefix.existentials.values()) \
        if prefix.existentials else frozenset()
    working = list(formula.matrix)
    i = 0
    while i < len(working):
        clause = working[i]
        context = Dqbf(prefix, tuple(working[:i] + working[i + 1:]))
        deleted = False
        dropped: int | None = None
        for lit in sorted(clause, key=literal_key):
            if abs(lit) in prefix.existentials and dqrat_plus_check(context, clause, lit):
                deleted = True
                break
        if not deleted:
            for lit in sorted(clause, key=literal_key):
                if abs(lit) in prefix.existentials or abs(lit) not in depended:
                    continue
                if dqrat_plus_check(context, clause, lit):
                    dropped = lit
                    break
        if deleted:
            working.pop(i)
            report.clauses_removed += 1
            continue
        if dropped is None:
            i += 1
            continue
        reduced = universal_reduce_clause(
            prefix, tuple(lit for lit in clause if lit != dropped))
        report.clauses_shortened += 1
        if reduced == ():
            working[i] = reduced
            report.conflicts += 1
            break
        if reduced in working[:i] or reduced in working[i + 1:]:
            working.pop(i)  # merged into an existing clause
            continue
        working[i] = reduced
        i += 1
    return Dqbf(prefix, tuple(working)), report
