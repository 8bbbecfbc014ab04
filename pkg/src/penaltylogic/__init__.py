"""Penalty logic: weighted knowledge bases, cost-based inference and their
Dempster-Shafer reading."""

from penaltylogic.belief import (
    MassFunction,
    OrderOfMagnitude,
    check_contour_identity,
    combine,
    contour,
    infinitesimal_plausibility,
    kb_mass,
    plausibility,
    simple_support,
)
from penaltylogic.encoders import (
    CliqueResult,
    Graph,
    encode_max_clique,
    export_wcnf,
    read_dimacs_graph,
    read_wcnf,
    solve_max_clique,
)
from penaltylogic.errors import (
    CapExceededError,
    FormulaSyntaxError,
    PenaltyLogicError,
    VocabularyError,
)
from penaltylogic.inference import (
    PostulateReport,
    Query,
    check_postulates,
    nm_entails,
    nm_entails_by_subtheories,
    reduction_check,
)
from penaltylogic.kb import (
    INF,
    PenaltyKB,
    Preference,
    WeightedFormula,
    add_hard,
    as_penalty,
    format_cost,
    hard_core,
    interpretation_cost,
    less_expensive,
    normalize,
    parse_kb,
    prefer,
    semantically_equivalent,
    subtheory_cost,
)
from penaltylogic.logic import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Interpretation,
    Not,
    Or,
    PartialAssignment,
    entails,
    enumerate_interpretations,
    evaluate,
    is_consistent,
    parse_formula,
    partial_evaluate,
    to_text,
)
from penaltylogic.solver import (
    SearchConfig,
    SolveResult,
    brute_force_min_cost,
    consistency_cost,
    min_cost_interpretations,
    phi_preferred_subtheories,
    preferred_subtheories,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "BOTTOM",
    "CapExceededError",
    "CliqueResult",
    "Formula",
    "FormulaSyntaxError",
    "Graph",
    "INF",
    "Iff",
    "Implies",
    "Interpretation",
    "MassFunction",
    "Not",
    "Or",
    "OrderOfMagnitude",
    "PartialAssignment",
    "PenaltyKB",
    "PenaltyLogicError",
    "PostulateReport",
    "Preference",
    "Query",
    "SearchConfig",
    "SolveResult",
    "TOP",
    "VocabularyError",
    "WeightedFormula",
    "add_hard",
    "as_penalty",
    "brute_force_min_cost",
    "check_contour_identity",
    "check_postulates",
    "combine",
    "consistency_cost",
    "contour",
    "encode_max_clique",
    "entails",
    "enumerate_interpretations",
    "evaluate",
    "export_wcnf",
    "format_cost",
    "hard_core",
    "infinitesimal_plausibility",
    "interpretation_cost",
    "is_consistent",
    "kb_mass",
    "less_expensive",
    "min_cost_interpretations",
    "nm_entails",
    "nm_entails_by_subtheories",
    "normalize",
    "parse_formula",
    "parse_kb",
    "partial_evaluate",
    "phi_preferred_subtheories",
    "plausibility",
    "prefer",
    "preferred_subtheories",
    "read_dimacs_graph",
    "read_wcnf",
    "reduction_check",
    "semantically_equivalent",
    "simple_support",
    "solve_max_clique",
    "subtheory_cost",
    "to_text",
]
