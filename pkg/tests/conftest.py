"""Shared strategies and helpers for the test suite.

The hypothesis strategies deliberately produce interleaved, gappy
variable ids so nothing in the package can get away with assuming the
universals come first or that ids are contiguous. Sizes are kept small
enough that every generated formula fits the oracle budget.
"""

from __future__ import annotations

import hypothesis.strategies as st

from dqprep import Dqbf, Prefix, TAUTOLOGY, normalize_clause

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, label: str, ok: bool) -> None:
    line = f"ACCEPTANCE {number:02d} {label}: {'PASS' if ok else 'FAIL'}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def oracle_bits(formula: Dqbf) -> int:
    return sum(2 ** len(d) for d in formula.prefix.existentials.values())


def in_oracle_budget(formula: Dqbf, limit: int = 20) -> bool:
    return (oracle_bits(formula) <= limit
            and len(formula.prefix.universals) <= limit)


@st.composite
def prefixes(draw, max_universals: int = 2, max_existentials: int = 3) -> Prefix:
    ids = draw(st.lists(st.integers(min_value=1, max_value=9), unique=True,
                        min_size=0, max_size=max_universals + max_existentials))
    low = max(0, len(ids) - max_existentials)
    high = min(max_universals, len(ids))
    n_universal = draw(st.integers(min_value=low, max_value=high))
    universals = frozenset(ids[:n_universal])
    existentials = {}
    for var in ids[n_universal:]:
        if universals:
            deps = draw(st.frozensets(st.sampled_from(sorted(universals))))
        else:
            deps = frozenset()
        existentials[var] = deps
    return Prefix(universals, existentials)


@st.composite
def clauses_over(draw, variables: list[int], max_width: int = 4):
    width = draw(st.integers(min_value=1, max_value=max_width))
    lits = draw(st.lists(
        st.builds(lambda v, s: v * s, st.sampled_from(variables),
                  st.sampled_from((1, -1))),
        min_size=1, max_size=width))
    return normalize_clause(lits)


@st.composite
def formulas(draw, max_clauses: int = 6, max_width: int = 4) -> Dqbf:
    prefix = draw(prefixes())
    variables = sorted(prefix.variables)
    matrix = []
    if variables:
        for _ in range(draw(st.integers(min_value=0, max_value=max_clauses))):
            clause = draw(clauses_over(variables, max_width))
            if clause is not TAUTOLOGY:
                matrix.append(clause)
    return Dqbf(prefix, tuple(matrix))
