"""Vivification, polarity lookahead, and redundancy elimination."""

import pytest
from hypothesis import given, settings

from conftest import formulas
from dqprep import (CompatibilityError, ContractViolation, Dqbf,
                    KernelUndefined, Prefix, TAUTOLOGY, VivifyKind,
                    dqrat_eliminate_pass, dqrat_plus_check, equisatisfiable,
                    equivalent, outer_resolvent, outer_variables, solve_brute,
                    upla_apply, upla_pass, upla_probe, vivify_clause,
                    vivify_pass)


def u_e(universals, existentials):
    return Prefix(frozenset(universals), existentials)


def flat(n):
    return u_e(set(), {v: frozenset() for v in range(1, n + 1)})


# -- vivification -----------------------------------------------------------


def test_vivify_strengthens_from_propagated_literal():
    f = Dqbf(flat(3), ((-1, 2), (-1, 2, 3)))
    r = vivify_clause(f, (-1, 2, 3))
    assert r.kind is VivifyKind.STRENGTHENED
    assert r.new_clause == (-1, 2)


def test_vivify_replaces_with_proper_subset():
    f = Dqbf(flat(3), ((-1, 2), (-1, -2), (-1, 3)))
    r = vivify_clause(f, (-1, 3))
    assert r.kind is VivifyKind.REPLACED
    assert r.new_clause == (-1,)


def test_vivify_probes_without_the_clause_itself():
    # with the clause left in, assuming not-1 would propagate 2 and
    # self-subsume; the probe must not use the clause under test
    f = Dqbf(flat(2), ((1, 2),))
    assert vivify_clause(f, (1, 2)).kind is VivifyKind.UNCHANGED


def test_vivify_short_clause_unchanged():
    f = Dqbf(flat(1), ((1,),))
    assert vivify_clause(f, (1,)).kind is VivifyKind.UNCHANGED


def test_vivify_zero_budget_unchanged():
    f = Dqbf(flat(3), ((-1, 2), (-1, -2), (-1, 3)))
    assert vivify_clause(f, (-1, 3), budget=0).kind is VivifyKind.UNCHANGED


def test_vivify_rejects_foreign_clause():
    f = Dqbf(flat(2), ((1, 2),))
    with pytest.raises(ContractViolation):
        vivify_clause(f, (1, -2))


def test_vivify_pass_merges_into_existing_clause():
    f = Dqbf(flat(3), ((-1, 2), (-1, 2, 3)))
    out, report = vivify_pass(f)
    assert out.matrix == ((-1, 2),)
    assert report.clauses_shortened == 1
    assert report.clauses_removed == 0


def test_vivify_pass_keeps_refuted_formula():
    f = Dqbf(flat(2), ((), (1, 2)))
    out, report = vivify_pass(f)
    assert out == f and not report.changed


def test_vivify_pass_records_derived_conflict():
    f = Dqbf(flat(3), ((1,), (-1,), (2, 3)))
    out, report = vivify_pass(f)
    assert () in out.matrix
    assert report.conflicts == 1


@given(formulas())
@settings(max_examples=60)
def test_vivify_clause_preserves_equivalence(formula):
    for clause in formula.matrix:
        result = vivify_clause(formula, clause)
        if result.kind is VivifyKind.UNCHANGED or result.new_clause == clause:
            continue
        rewritten = Dqbf(formula.prefix,
                         tuple(result.new_clause if c == clause else c
                               for c in formula.matrix))
        assert equivalent(formula, rewritten)


@given(formulas())
@settings(max_examples=60)
def test_vivify_pass_preserves_equivalence_and_size(formula):
    out, _ = vivify_pass(formula)
    assert equivalent(formula, out)
    assert (sum(len(c) for c in out.matrix)
            <= sum(len(c) for c in formula.matrix))


# -- polarity lookahead -----------------------------------------------------


def test_upla_one_sided_force():
    f = Dqbf(flat(1), ((1,),))
    findings = upla_probe(f, 1)
    assert findings.forced == frozenset({1})
    assert findings.common_units == frozenset()
    assert findings.equivalences == frozenset()


def test_upla_contradictory_force():
    f = Dqbf(flat(1), ((1,), (-1,)))
    findings = upla_probe(f, 1)
    assert findings.contradictory
    assert upla_apply(f, findings).matrix == ((),)


def test_upla_detects_equivalence():
    f = Dqbf(flat(2), ((-1, 2), (1, -2)))
    findings = upla_probe(f, 1)
    assert findings.forced == frozenset()
    assert findings.common_units == frozenset()
    assert findings.equivalences == frozenset({(1, 2)})
    # the clauses encoding the equivalence are already there
    assert upla_apply(f, findings) == f


def test_upla_pass_counts_new_equivalence_clauses():
    # 1 implies 3 implies 2 implies 1, probing finds the whole cycle
    f = Dqbf(flat(3), ((-1, 3), (-3, 2), (1, -2)))
    out, report = upla_pass(f)
    assert report.units_added == 0
    assert report.equivalences_added == 3
    assert (-1, 2) in out.matrix and (1, -3) in out.matrix


def test_upla_detects_common_unit():
    f = Dqbf(flat(2), ((-1, 2), (1, 2)))
    findings = upla_probe(f, 1)
    assert findings.common_units == frozenset({2})
    assert findings.equivalences == frozenset()


def test_upla_universal_common_unit_is_sound():
    # both probes of the existential propagate the universal literal;
    # the added unit clause collapses under reduction, and indeed the
    # formula was unsatisfiable to begin with
    f = Dqbf(u_e({1}, {2: frozenset({1})}), ((1, -2), (1, 2)))
    findings = upla_probe(f, 2)
    assert findings.common_units == frozenset({1})
    assert not solve_brute(f).satisfiable


def test_upla_rejects_unknown_variable():
    with pytest.raises(CompatibilityError):
        upla_probe(Dqbf(flat(1), ()), 9)


def test_upla_pass_applies_findings_in_order():
    f = Dqbf(flat(2), ((-1, 2), (1, 2)))
    out, report = upla_pass(f)
    assert out.matrix == ((-1, 2), (1, 2), (2,))
    assert report.units_added == 1
    assert report.equivalences_added == 0


def test_upla_pass_contradiction_refutes():
    f = Dqbf(flat(1), ((1,), (-1,)))
    out, report = upla_pass(f)
    assert out.matrix == ((),)
    assert report.conflicts == 1


def test_upla_pass_existential_only_skips_universals(monkeypatch):
    import dqprep.techniques as techniques
    probed = []
    original = techniques.upla_probe

    def recording(formula, var):
        probed.append(var)
        return original(formula, var)

    monkeypatch.setattr(techniques, "upla_probe", recording)
    f = Dqbf(u_e({1}, {2: frozenset({1})}), ((1, 2),))
    techniques.upla_pass(f, existential_only=True)
    assert probed == [2]
    probed.clear()
    techniques.upla_pass(f)
    assert probed == [1, 2]


@given(formulas())
@settings(max_examples=60)
def test_upla_pass_is_sound(formula):
    out, _ = upla_pass(formula)
    if out == formula:
        return
    if out.matrix == ((),):
        assert not solve_brute(formula).satisfiable
    else:
        assert equivalent(formula, out)


# -- outer variable sets ----------------------------------------------------


def test_outer_sets_for_existential():
    p = u_e({1, 2}, {3: frozenset({1}), 4: frozenset({1, 2})})
    sets = outer_variables(p, 3)
    assert sets.outer == frozenset({1, 3})
    assert sets.dependents is None
    assert sets.kernel is None


def test_outer_sets_for_universal():
    p = u_e({1, 2}, {3: frozenset({1}), 4: frozenset({1, 2})})
    sets = outer_variables(p, 2)
    assert sets.dependents == frozenset({4})
    assert sets.independents == frozenset({3})
    assert sets.kernel == frozenset({1, 2})
    assert sets.outer == frozenset({1, 2, 3})


def test_outer_sets_universal_without_dependents():
    p = u_e({1}, {2: frozenset()})
    with pytest.raises(KernelUndefined):
        outer_variables(p, 1)


def test_outer_sets_unknown_variable():
    with pytest.raises(CompatibilityError):
        outer_variables(flat(1), 5)


@given(formulas())
def test_outer_sets_invariants(formula):
    prefix = formula.prefix
    for var in sorted(prefix.existentials):
        sets = outer_variables(prefix, var)
        assert var in sets.outer
        assert prefix.existentials[var] <= sets.outer
    for var in sorted(prefix.universals):
        try:
            sets = outer_variables(prefix, var)
        except KernelUndefined:
            continue
        assert var in sets.kernel
        assert sets.kernel <= sets.outer
        assert not (sets.dependents & sets.outer)


# -- outer resolvents -------------------------------------------------------


def test_resolvent_existential_pivot_keeps_pivot():
    assert outer_resolvent(flat(3), (1, 2), (-1, 3), 1) == (1, 2, 3)


def test_resolvent_restricts_partner_to_outer_variables():
    p = u_e({1}, {2: frozenset(), 3: frozenset({1})})
    assert outer_resolvent(p, (2,), (1, -2, 3), 2) == (2,)


def test_resolvent_universal_pivot_keeps_complement():
    p = u_e({1}, {2: frozenset({1})})
    assert outer_resolvent(p, (1, 2), (-1, -2), 1) == (-1, 2)


def test_resolvent_can_be_tautology():
    assert outer_resolvent(flat(2), (1, 2), (-1, -2), 1) is TAUTOLOGY


def test_resolvent_rejects_bad_pivot():
    with pytest.raises(ContractViolation):
        outer_resolvent(flat(2), (1, 2), (-1,), 2)


def test_resolvent_rejects_tautological_input():
    with pytest.raises(ContractViolation):
        outer_resolvent(flat(2), (1, -1, 2), (-1,), 1)


# -- redundancy elimination -------------------------------------------------


def test_dqrat_check_vacuous_without_partners():
    f = Dqbf(flat(1), ((1,),))
    assert dqrat_plus_check(f, (1,), 1)


def test_dqrat_check_rejects_needed_clause():
    # checked against the rest of the matrix, as the sweep does
    context = Dqbf(flat(2), ((-1, 2), (1, -2), (-1, -2)))
    assert not dqrat_plus_check(context, (1, 2), 1)
    assert not dqrat_plus_check(context, (1, 2), 2)


def test_dqrat_check_rejects_tautology_and_bad_pivot():
    f = Dqbf(flat(2), ())
    with pytest.raises(ContractViolation):
        dqrat_plus_check(f, (1, -1), 1)
    with pytest.raises(ContractViolation):
        dqrat_plus_check(f, (1,), 2)


def test_dqrat_pass_deletes_lone_supported_clause():
    f = Dqbf(u_e({1}, {2: frozenset({1})}), ((1, 2),))
    out, report = dqrat_eliminate_pass(f)
    assert out.matrix == ()
    assert report.clauses_removed == 1


def test_dqrat_pass_drops_universal_literal():
    f = Dqbf(u_e({1}, {2: frozenset({1})}), ((1, 2), (-2,)))
    out, report = dqrat_eliminate_pass(f)
    assert out.matrix == ((2,), (-2,))
    assert report.clauses_shortened == 1
    assert report.clauses_removed == 0


def test_dqrat_pass_removes_blocked_clauses():
    f = Dqbf(flat(2), ((1, 2), (-1, 2)))
    out, report = dqrat_eliminate_pass(f)
    assert out.matrix == ()
    assert report.clauses_removed == 2


def test_dqrat_pass_leaves_tight_formula_alone():
    f = Dqbf(flat(2), ((1, 2), (-1, 2), (1, -2), (-1, -2)))
    out, report = dqrat_eliminate_pass(f)
    assert out == f and not report.changed


def test_dqrat_pass_derives_conflict_from_universal_clause():
    f = Dqbf(u_e({1}, {2: frozenset({1})}), ((1,),))
    out, report = dqrat_eliminate_pass(f)
    assert out.matrix == ((),)
    assert report.conflicts == 1


def test_dqrat_pass_keeps_refuted_formula():
    f = Dqbf(flat(2), ((), (1, 2)))
    out, report = dqrat_eliminate_pass(f)
    assert out == f and not report.changed


@given(formulas())
@settings(max_examples=60)
def test_dqrat_pass_preserves_satisfiability(formula):
    out, _ = dqrat_eliminate_pass(formula)
    assert equisatisfiable(formula, out)
    assert (sum(len(c) for c in out.matrix)
            <= sum(len(c) for c in formula.matrix))


@given(formulas())
@settings(max_examples=40)
def test_passes_are_deterministic(formula):
    assert vivify_pass(formula) == vivify_pass(formula)
    assert upla_pass(formula) == upla_pass(formula)
    assert dqrat_eliminate_pass(formula) == dqrat_eliminate_pass(formula)
