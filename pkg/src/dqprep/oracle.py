"""Ground-truth semantics for small DQBF instances.

Two independent decision procedures are provided so they can check each
other: `solve_brute` enumerates candidate Skolem function tuples, and
`solve_expansion` expands the universals away and runs a plain recursive
propositional search. Equivalence and implication compare the full sets
of Skolem functions, not just verdicts.

Truth tables and assignments are ranked the same way throughout: order
the variables ascending and read an assignment as a binary number whose
least significant bit is the smallest variable. `solve_brute` enumerates
tuples by ascending rank, so the returned witness is canonically first.

Everything is exponential by design. Calls guard their cost with an
exponent budget and raise BudgetError instead of guessing, so callers
can skip oversized instances without ever misreporting a verdict.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetError, ContractViolation
from .formula import Clause, Dqbf

Assignment = Mapping[int, bool]

DEFAULT_BUDGET = 20  # exponent: at most 2**20 candidate tuples


def assignment_rank(assignment: Assignment, domain: Sequence[int]) -> int:
    """Rank of an assignment restricted to `domain` (ascending order,
    smallest variable = least significant bit)."""
    rank = 0
    for position, var in enumerate(domain):
        if assignment[var]:
            rank |= 1 << position
    return rank


@dataclass(frozen=True)
class SkolemFunction:
    """A Boolean function for one existential, as an explicit truth table
    over its dependency domain."""

    variable: int
    domain: tuple[int, ...]
    table: tuple[bool, ...]

    def __post_init__(self) -> None:
        domain = tuple(int(v) for v in self.domain)
        if list(domain) != sorted(set(domain)):
            raise ContractViolation("domain must be strictly ascending")
        table = tuple(bool(b) for b in self.table)
        if len(table) != 1 << len(domain):
            raise ContractViolation(
                f"table for {len(domain)} inputs needs {1 << len(domain)} rows")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "table", table)

    def value(self, assignment: Assignment) -> bool:
        return self.table[assignment_rank(assignment, self.domain)]


@dataclass(frozen=True)
class SkolemTuple:
    """One Skolem function per existential variable."""

    functions: tuple[SkolemFunction, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.functions, key=lambda f: f.variable))
        if len({f.variable for f in ordered}) != len(ordered):
            raise ContractViolation("duplicate function for a variable")
        object.__setattr__(self, "functions", ordered)

    def function_for(self, var: int) -> SkolemFunction:
        for fn in self.functions:
            if fn.variable == var:
                return fn
        raise ContractViolation(f"no function for variable {var}")


@dataclass(frozen=True)
class SolveResult:
    satisfiable: bool
    witness: SkolemTuple | None = None


def evaluate(matrix: Iterable[Clause], assignment: Assignment) -> bool:
    """Evaluate a CNF matrix under a total assignment."""
    for clause in matrix:
        for lit in clause:
            if abs(lit) not in assignment:
                raise ContractViolation(f"assignment misses variable {abs(lit)}")
        if not any(assignment[abs(l)] == (l > 0) for l in clause):
            return False
    return True


def is_skolem(formula: Dqbf, candidate: SkolemTuple) -> bool:
    """Does the tuple make the matrix true under every universal
    assignment? Domains must match the declared dependency sets."""
    existentials = formula.prefix.existentials
    functions = {f.variable: f for f in candidate.functions}
    if set(functions) != set(existentials):
        raise ContractViolation("tuple does not cover exactly the existentials")
    for var, fn in functions.items():
        if frozenset(fn.domain) != existentials[var]:
            raise ContractViolation(
                f"function domain for {var} differs from its dependency set")
    universals = sorted(formula.prefix.universals)
    for rank in range(1 << len(universals)):
        assignment: dict[int, bool] = {
            v: bool((rank >> i) & 1) for i, v in enumerate(universals)
        }
        for var, fn in functions.items():
            assignment[var] = fn.value(assignment)
        if not evaluate(formula.matrix, assignment):
            return False
    return True


# -- candidate-space bit masks ----------------------------------------------
#
# A candidate tuple is encoded as an integer: each existential owns a block
# of table bits (ascending variables, lower variables in lower-order bits).
# The set of satisfying tuples is then a single big integer whose bit T is
# set iff candidate T works, which makes set comparisons exact and cheap.


@dataclass(frozen=True)
class _Entry:
    variable: int
    domain: tuple[int, ...]
    offset: int
    width: int
    domain_bits: tuple[int, ...]  # bit index of each domain variable


@dataclass(frozen=True)
class _Layout:
    universals: tuple[int, ...]
    uindex: Mapping[int, int]
    entries: tuple[_Entry, ...]
    total_bits: int


def _layout(formula: Dqbf) -> _Layout:
    universals = tuple(sorted(formula.prefix.universals))
    uindex = {v: i for i, v in enumerate(universals)}
    entries = []
    offset = 0
    for var in sorted(formula.prefix.existentials):
        domain = tuple(sorted(formula.prefix.existentials[var]))
        width = 1 << len(domain)
        entries.append(_Entry(var, domain, offset, width,
                              tuple(uindex[v] for v in domain)))
        offset += width
    return _Layout(universals, uindex, tuple(entries), offset)


@lru_cache(maxsize=None)
def _bit_mask(total_bits: int, position: int) -> int:
    # mask over 2**total_bits candidate indices T selecting (T >> position) & 1
    nbits = 1 << total_bits
    block = 1 << position
    mask = ((1 << block) - 1) << block
    span = block * 2
    while span < nbits:
        mask |= mask << span
        span *= 2
    return mask


def _check_budget(layout: _Layout, limit: int) -> None:
    if layout.total_bits > limit:
        raise BudgetError(
            f"candidate space 2**{layout.total_bits} exceeds 2**{limit}")
    if len(layout.universals) > limit:
        raise BudgetError(
            f"{len(layout.universals)} universals exceed the 2**{limit} budget")


def _satisfying_mask(formula: Dqbf, limit: int) -> tuple[int, _Layout]:
    layout = _layout(formula)
    _check_budget(layout, limit)
    nbits = 1 << layout.total_bits
    full = (1 << nbits) - 1
    entry_for = {e.variable: e for e in layout.entries}
    split = []
    for clause in formula.matrix:
        ulits = []
        elits = []
        for lit in clause:
            var = abs(lit)
            if var in layout.uindex:
                ulits.append((layout.uindex[var], lit > 0))
            else:
                elits.append((entry_for[var], lit > 0))
        split.append((ulits, elits))
    mask = full
    for urank in range(1 << len(layout.universals)):
        for ulits, elits in split:
            if any(bool((urank >> i) & 1) == positive for i, positive in ulits):
                continue  # clause satisfied by the universal assignment
            acc = 0
            for entry, positive in elits:
                row = 0
                for j, bit in enumerate(entry.domain_bits):
                    row |= ((urank >> bit) & 1) << j
                bit_mask = _bit_mask(layout.total_bits, entry.offset + row)
                acc |= bit_mask if positive else full ^ bit_mask
            mask &= acc
            if mask == 0:
                return 0, layout
    return mask, layout


def solve_brute(formula: Dqbf, limit: int = DEFAULT_BUDGET) -> SolveResult:
    """Decide satisfiability by enumerating Skolem tuples; returns the
    canonically first witness on success."""
    mask, layout = _satisfying_mask(formula, limit)
    if mask == 0:
        return SolveResult(False)
    index = (mask & -mask).bit_length() - 1
    functions = []
    for entry in layout.entries:
        bits = (index >> entry.offset) & ((1 << entry.width) - 1)
        table = tuple(bool((bits >> row) & 1) for row in range(entry.width))
        functions.append(SkolemFunction(entry.variable, entry.domain, table))
    return SolveResult(True, SkolemTuple(tuple(functions)))


def equivalent(first: Dqbf, second: Dqbf, limit: int = DEFAULT_BUDGET) -> bool:
    """Same prefix and identical sets of Skolem functions. Two formulas
    with no Skolem functions at all are equivalent."""
    if first.prefix != second.prefix:
        raise ContractViolation("equivalence needs identical prefixes")
    mask_a, _ = _satisfying_mask(first, limit)
    mask_b, _ = _satisfying_mask(second, limit)
    return mask_a == mask_b


def implies(first: Dqbf, second: Dqbf, limit: int = DEFAULT_BUDGET) -> bool:
    """Every Skolem function of `first` is one of `second` (same prefix)."""
    if first.prefix != second.prefix:
        raise ContractViolation("implication needs identical prefixes")
    mask_a, _ = _satisfying_mask(first, limit)
    mask_b, _ = _satisfying_mask(second, limit)
    return (mask_a | mask_b) == mask_b


def equisatisfiable(first: Dqbf, second: Dqbf, limit: int = DEFAULT_BUDGET) -> bool:
    """Solver verdicts agree (prefixes may differ)."""
    mask_a, _ = _satisfying_mask(first, limit)
    mask_b, _ = _satisfying_mask(second, limit)
    return (mask_a != 0) == (mask_b != 0)


# -- independent route: universal expansion plus propositional search -------


def solve_expansion(formula: Dqbf, limit: int = DEFAULT_BUDGET) -> SolveResult:
    """Decide satisfiability by instantiating every existential as one
    fresh propositional variable per assignment of its dependency set,
    expanding the matrix over all universal assignments, and running a
    recursive decision procedure with unit propagation."""
    universals = sorted(formula.prefix.universals)
    n = len(universals)
    if n > limit or (1 << n) * max(1, len(formula.matrix)) > (1 << limit):
        raise BudgetError(f"expansion of 2**{n} assignments exceeds the budget")
    uindex = {v: i for i, v in enumerate(universals)}
    copies: dict[tuple[int, int], int] = {}
    counter = 0
    for var in sorted(formula.prefix.existentials):
        domain = sorted(formula.prefix.existentials[var])
        for row in range(1 << len(domain)):
            counter += 1
            copies[(var, row)] = counter
    domains = {var: sorted(deps) for var, deps in formula.prefix.existentials.items()}
    expanded: set[frozenset[int]] = set()
    for urank in range(1 << n):
        for clause in formula.matrix:
            lits = []
            satisfied = False
            for lit in clause:
                var = abs(lit)
                if var in uindex:
                    if bool((urank >> uindex[var]) & 1) == (lit > 0):
                        satisfied = True
                        break
                else:
                    row = 0
                    for j, v in enumerate(domains[var]):
                        row |= ((urank >> uindex[v]) & 1) << j
                    ground = copies[(var, row)]
                    lits.append(ground if lit > 0 else -ground)
            if satisfied:
                continue
            if not lits:
                return SolveResult(False)  # clause false under this assignment
            expanded.add(frozenset(lits))
    return SolveResult(_dpll(list(expanded)))


def _dpll(clauses: list[frozenset[int]]) -> bool:
    while True:
        if any(not c for c in clauses):
            return False
        unit = next((next(iter(c)) for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        clauses = [c - {-unit} for c in clauses if unit not in c]
    if not clauses:
        return True
    branch = min((l for c in clauses for l in c), key=abs)
    for lit in (branch, -branch):
        if _dpll([c - {-lit} for c in clauses if lit not in c]):
            return True
    return False
