"""DQBF preprocessing with reduction-aware unit propagation and a
brute-force semantic oracle for validating every transformation."""

from .errors import (BudgetError, CompatibilityError, ContractViolation,
                     DqprepError, KernelUndefined, NotInPrefixError,
                     ParseError, VerificationError)
from .formula import (TAUTOLOGY, Clause, Dqbf, Literal, Prefix, dep,
                      is_compatible, literal_key, normalize_clause,
                      prefix_remove)
from .dqdimacs import ParseDiagnostic, ParseResult, emit_dqdimacs, parse_dqdimacs
from .propagation import (PropagationOutcome, abstract, dqat_check,
                          unit_propagate, universal_reduce,
                          universal_reduce_clause)
from .oracle import (SkolemFunction, SkolemTuple, SolveResult, equisatisfiable,
                     equivalent, evaluate, implies, is_skolem, solve_brute,
                     solve_expansion)
from .reports import PassReport
from .techniques import (OuterSets, UplaFindings, VivifyKind, VivifyResult,
                         dqrat_eliminate_pass, dqrat_plus_check,
                         outer_resolvent, outer_variables, upla_apply,
                         upla_pass, upla_probe, vivify_clause, vivify_pass)
from .pipeline import (FuzzBounds, PASS_NAMES, PipelineConfig, Verdict, fuzz,
                       run_pipeline)

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "CompatibilityError", "ContractViolation", "DqprepError",
    "KernelUndefined", "NotInPrefixError", "ParseError", "VerificationError",
    "TAUTOLOGY", "Clause", "Dqbf", "Literal", "Prefix", "dep", "is_compatible",
    "literal_key", "normalize_clause", "prefix_remove",
    "ParseDiagnostic", "ParseResult", "emit_dqdimacs", "parse_dqdimacs",
    "PropagationOutcome", "abstract", "dqat_check", "unit_propagate",
    "universal_reduce", "universal_reduce_clause",
    "SkolemFunction", "SkolemTuple", "SolveResult", "equisatisfiable",
    "equivalent", "evaluate", "implies", "is_skolem", "solve_brute",
    "solve_expansion",
    "PassReport",
    "OuterSets", "UplaFindings", "VivifyKind", "VivifyResult",
    "dqrat_eliminate_pass", "dqrat_plus_check", "outer_resolvent",
    "outer_variables", "upla_apply", "upla_pass", "upla_probe",
    "vivify_clause", "vivify_pass",
    "FuzzBounds", "PASS_NAMES", "PipelineConfig", "Verdict", "fuzz",
    "run_pipeline",
    "__version__",
]
