"""Universal reduction, unit propagation, prefix abstraction, and the
propagation-based redundancy test for clauses.

Unit propagation here is stronger than its propositional counterpart:
whenever a clause is shortened, universal literals that no remaining
existential literal of the clause depends on are deleted as well. A
clause left with only such literals collapses to the empty clause, so a
universal unit clause is a conflict rather than an assignment.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import CompatibilityError, ContractViolation
from .formula import (
    Clause,
    Dqbf,
    Prefix,
    TAUTOLOGY,
    dep,
    is_compatible,
    normalize_clause,
)


@dataclass(frozen=True)
class PropagationOutcome:
    """Result of running unit propagation to its fixpoint.

    ``conflict`` is true when the empty clause was derived. Otherwise
    ``result`` holds the fixpoint formula, with every propagated
    existential removed from its prefix, and ``units`` the processed
    existential literals. ``steps`` counts processed units either way.
    """

    conflict: bool
    result: Dqbf | None = None
    units: frozenset[int] = frozenset()
    steps: int = 0


def _reduce(clause: Clause, existentials: Mapping[int, frozenset[int]]) -> Clause:
    # keep existential literals and universal literals some existential
    # literal of the clause depends on; drop the rest
    support: set[int] = set()
    for lit in clause:
        deps = existentials.get(abs(lit))
        if deps is not None:
            support.update(deps)
    return tuple(l for l in clause if abs(l) in existentials or abs(l) in support)


def universal_reduce_clause(prefix: Prefix, clause: Iterable[int]) -> Clause:
    """Delete every universal literal no existential literal of the clause
    may depend on. Preserves the set of Skolem functions."""
    canon = normalize_clause(clause)
    if canon is TAUTOLOGY:
        raise ContractViolation("cannot reduce a tautological clause")
    if not is_compatible(prefix, canon):
        raise CompatibilityError(f"clause {canon} is not compatible with the prefix")
    return _reduce(canon, prefix.existentials)


def universal_reduce(formula: Dqbf) -> Dqbf:
    """Apply clause-wise universal reduction; the prefix is unchanged."""
    exist = formula.prefix.existentials
    return Dqbf(formula.prefix, tuple(_reduce(c, exist) for c in formula.matrix))


def unit_propagate(formula: Dqbf) -> PropagationOutcome:
    """Run unit propagation with interleaved universal reduction until
    nothing changes.

    All clauses are reduced up front, then existential unit clauses are
    processed from a FIFO queue seeded in matrix order: clauses containing
    the unit are removed, the opposite literal is deleted elsewhere, the
    propagated variable leaves the prefix, and every shortened clause is
    re-reduced before the next unit is dequeued. Deriving the empty clause
    is a conflict. Deterministic; the fixpoint is itself a fixpoint.
    """
    existentials = dict(formula.prefix.existentials)
    clauses: list[Clause | None] = []
    queue: deque[int] = deque()
    for clause in formula.matrix:
        reduced = _reduce(clause, existentials)
        if not reduced:
            return PropagationOutcome(conflict=True)
        clauses.append(reduced)
        if len(reduced) == 1 and abs(reduced[0]) in existentials:
            queue.append(reduced[0])
    units: list[int] = []
    while queue:
        lit = queue.popleft()
        if abs(lit) not in existentials:
            continue  # already propagated through another clause
        del existentials[abs(lit)]
        units.append(lit)
        for index, clause in enumerate(clauses):
            if clause is None:
                continue
            if lit in clause:
                clauses[index] = None
            elif -lit in clause:
                shortened = tuple(l for l in clause if l != -lit)
                reduced = _reduce(shortened, existentials)
                if not reduced:
                    return PropagationOutcome(conflict=True, steps=len(units))
                clauses[index] = reduced
                if len(reduced) == 1 and abs(reduced[0]) in existentials:
                    queue.append(reduced[0])
    survivors = tuple(c for c in clauses if c is not None)
    result = Dqbf(Prefix(formula.prefix.universals, existentials), survivors)
    return PropagationOutcome(False, result, frozenset(units), len(units))


def abstract(formula: Dqbf, variables: Iterable[int]) -> Dqbf:
    """Turn the given universal variables into existentials with empty
    dependency sets.

    The chosen variables also disappear from every dependency set; the
    matrix is unchanged. Satisfiability transfers from the original to
    the abstraction, and equivalences proven on abstractions transfer
    back to the original prefix.
    """
    chosen = frozenset(int(v) for v in variables)
    stray = chosen - formula.prefix.universals
    if stray:
        raise ContractViolation(f"not universal variables: {sorted(stray)}")
    if not chosen:
        return formula
    existentials = {y: deps - chosen
                    for y, deps in formula.prefix.existentials.items()}
    for v in chosen:
        existentials[v] = frozenset()
    prefix = Prefix(formula.prefix.universals - chosen, existentials)
    return Dqbf(prefix, formula.matrix)


def dqat_check(formula: Dqbf, clause: Iterable[int]) -> bool:
    """Redundancy test: does assuming the clause's negation propagate to a
    conflict once every variable the clause may depend on is abstracted?

    The negated clause is injected as unit assumptions, not registered in
    the matrix proper. A positive answer means the clause can be added to
    (or a present copy deleted from) the matrix without changing the set
    of Skolem functions. The abstraction step is what makes the test
    sound; propagating without it can claim redundancy for clauses that
    genuinely constrain the formula.
    """
    canon = normalize_clause(clause)
    if canon is TAUTOLOGY:
        raise ContractViolation("tautological clauses need no redundancy test")
    if not is_compatible(formula, canon):
        raise CompatibilityError(f"clause {canon} is not compatible with the formula")
    assumptions = tuple((-lit,) for lit in canon)
    probe = Dqbf(formula.prefix, formula.matrix + assumptions)
    outcome = unit_propagate(abstract(probe, dep(formula, canon)))
    return outcome.conflict
