"""Grounding of first-order ASPIC+ theories via Datalog, with an argumentation back end."""

from .analysis import approximated_predicates, pred_dependencies, rule_scc_order
from .argumentation import Argument, AttackGraph, construct_arguments, induced_af
from .datalog import DatalogProgram, DatalogRule, NotStratifiable, evaluate, stratify
from .errors import BudgetExceeded
from .generator import GenConfig, generate
from .grounder import Mode, ground
from .naive import naive_ground_theory
from .semantics import certain_and_tentative, check, claim_sets, extensions
from .syntax import (
    Atom,
    ContraryExpr,
    DefeasibleRule,
    GroundTheory,
    StrictRule,
    Term,
    Theory,
    format_theory,
    parse_theory,
    validate,
)

__all__ = [
    "Argument",
    "Atom",
    "AttackGraph",
    "BudgetExceeded",
    "ContraryExpr",
    "DatalogProgram",
    "DatalogRule",
    "DefeasibleRule",
    "GenConfig",
    "GroundTheory",
    "Mode",
    "NotStratifiable",
    "StrictRule",
    "Term",
    "Theory",
    "approximated_predicates",
    "certain_and_tentative",
    "check",
    "claim_sets",
    "construct_arguments",
    "evaluate",
    "extensions",
    "format_theory",
    "generate",
    "ground",
    "induced_af",
    "naive_ground_theory",
    "parse_theory",
    "pred_dependencies",
    "rule_scc_order",
    "stratify",
    "validate",
]
