"""Reference grounding: substitute every variable by every constant of the Herbrand universe."""

from __future__ import annotations

import itertools
from typing import Iterable, TypeVar, Union

from .errors import BudgetExceeded
from .syntax import ContraryExpr, DefeasibleRule, GroundTheory, StrictRule, Term, Theory, herbrand_universe

DEFAULT_RULE_BUDGET = 10**6

Groundable = TypeVar("Groundable", bound=Union[StrictRule, DefeasibleRule, ContraryExpr])


class GroundingBudgetExceeded(BudgetExceeded):
    pass


def naive_ground_rule(rule: Groundable, universe: Iterable[Term]) -> frozenset[Groundable]:
    variables = sorted(rule.variables())
    if not variables:
        return frozenset([rule])
    universe = sorted(universe)
    return frozenset(
        rule.substitute(dict(zip(variables, values)))
        for values in itertools.product(universe, repeat=len(variables))
    )


def naive_ground_theory(theory: Theory, max_instances: int = DEFAULT_RULE_BUDGET) -> GroundTheory:
    universe = herbrand_universe(theory)
    elements = list(theory.contraries) + list(theory.strict) + list(theory.defeasible)
    total = sum(len(universe) ** len(e.variables()) for e in elements)
    if total > max_instances:
        raise GroundingBudgetExceeded(f"naive grounding would produce {total} instances (cap {max_instances})")
    return GroundTheory(
        frozenset(g for c in theory.contraries for g in naive_ground_rule(c, universe)),
        frozenset(g for r in theory.strict for g in naive_ground_rule(r, universe)),
        frozenset(g for r in theory.defeasible for g in naive_ground_rule(r, universe)),
        theory.facts,
        theory.assumptions,
    )
