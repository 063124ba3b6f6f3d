"""Core data model for dependency quantified Boolean formulas (DQBF).

Variables are positive integers following DQDIMACS numbering. A literal
is a non-zero integer, negative for a negated variable. Clauses are
duplicate-free tuples sorted by (variable, polarity) so equality is
structural; a matrix is an ordered, duplicate-free tuple of clauses.

All values are immutable once constructed and safe to share between
threads; every operation returns a new value.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import CompatibilityError, ContractViolation, NotInPrefixError

Literal = int
Clause = tuple[Literal, ...]


class _TautologyType:
    """Marker for clauses containing a variable in both polarities."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TAUTOLOGY"


TAUTOLOGY = _TautologyType()


def literal_key(literal: Literal) -> tuple[int, bool]:
    """Canonical literal order: ascending variable, positive first."""
    return (abs(literal), literal < 0)


def normalize_clause(literals: Iterable[Literal]) -> Clause | _TautologyType:
    """Return the canonical form of a clause.

    Duplicate literals are dropped and the rest sorted by `literal_key`.
    Returns TAUTOLOGY when both polarities of a variable are present.
    Idempotent on already canonical clauses.
    """
    seen: set[int] = set()
    for lit in literals:
        lit = int(lit)
        if lit == 0:
            raise ContractViolation("0 is not a literal")
        if -lit in seen:
            return TAUTOLOGY
        seen.add(lit)
    return tuple(sorted(seen, key=literal_key))


@dataclass(frozen=True)
class Prefix:
    """Quantifier prefix: universal variables plus a dependency map for
    the existential variables.

    Dependencies are explicit sets of universal variables, so the prefix
    carries no ordering. Universals and existentials must be disjoint.
    """

    universals: frozenset[int] = frozenset()
    existentials: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        universals = frozenset(int(v) for v in self.universals)
        raw = dict(self.existentials)
        existentials = {
            int(y): frozenset(int(v) for v in raw[y]) for y in sorted(raw)
        }
        for var in universals | existentials.keys():
            if var < 1:
                raise ContractViolation(f"variable ids must be positive: {var}")
        overlap = universals & existentials.keys()
        if overlap:
            raise ContractViolation(
                f"variables both universal and existential: {sorted(overlap)}")
        for var, deps in existentials.items():
            stray = deps - universals
            if stray:
                raise ContractViolation(
                    f"dependencies of {var} are not universal: {sorted(stray)}")
        object.__setattr__(self, "universals", universals)
        object.__setattr__(self, "existentials", existentials)

    @property
    def variables(self) -> frozenset[int]:
        return self.universals | frozenset(self.existentials)

    def __contains__(self, var: int) -> bool:
        return var in self.universals or var in self.existentials


@dataclass(frozen=True)
class Dqbf:
    """A quantifier prefix together with a CNF matrix.

    The matrix keeps insertion order but never holds duplicate or
    tautological clauses; every clause variable must be quantified.
    """

    prefix: Prefix
    matrix: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        known = self.prefix.variables
        clauses: list[Clause] = []
        seen: set[Clause] = set()
        for raw in self.matrix:
            if raw is TAUTOLOGY:
                continue
            clause = normalize_clause(raw)
            if clause is TAUTOLOGY:
                continue
            stray = {abs(l) for l in clause} - known
            if stray:
                raise CompatibilityError(
                    f"clause {clause} uses undeclared variables: {sorted(stray)}")
            if clause not in seen:
                seen.add(clause)
                clauses.append(clause)
        object.__setattr__(self, "matrix", tuple(clauses))

    @property
    def variables(self) -> frozenset[int]:
        return self.prefix.variables


def dep(scope: Dqbf | Prefix, target: int | Iterable[int]) -> frozenset[int]:
    """Dependency set of a variable, a literal, or a clause.

    A universal variable depends on itself, an existential carries its
    declared set, a literal inherits from its variable, and a clause is
    the union over its literals.
    """
    prefix = scope.prefix if isinstance(scope, Dqbf) else scope
    if isinstance(target, int):
        var = abs(target)
        if var in prefix.universals:
            return frozenset((var,))
        deps = prefix.existentials.get(var)
        if deps is None:
            raise CompatibilityError(f"variable {var} is not in the prefix")
        return deps
    out: frozenset[int] = frozenset()
    for lit in target:
        out |= dep(prefix, int(lit))
    return out


def prefix_remove(prefix: Prefix, var: int) -> Prefix:
    """Remove a variable from the prefix.

    Removing a universal also deletes it from every dependency set;
    removing an existential drops its entry.
    """
    if var in prefix.universals:
        return Prefix(prefix.universals - {var},
                      {y: deps - {var} for y, deps in prefix.existentials.items()})
    if var in prefix.existentials:
        rest = {y: deps for y, deps in prefix.existentials.items() if y != var}
        return Prefix(prefix.universals, rest)
    raise NotInPrefixError(f"variable {var} is not in the prefix")


def is_compatible(scope: Dqbf | Prefix, clause: Iterable[int]) -> bool:
    """True iff every variable of the clause occurs in the prefix."""
    prefix = scope.prefix if isinstance(scope, Dqbf) else scope
    return all(abs(int(l)) in prefix.variables for l in clause)
