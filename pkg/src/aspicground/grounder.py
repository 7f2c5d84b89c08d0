"""Grounding by querying the auxiliary Datalog program."""

from __future__ import annotations

import enum
from typing import Iterable

from .analysis import rule_scc_order
from .datalog import DatalogProgram, query
from .naive import DEFAULT_RULE_BUDGET, naive_ground_theory
from .syntax import (
    Atom,
    ContraryExpr,
    GroundTheory,
    Rule,
    StrictRule,
    Theory,
    match,
)
from .transform import AuxNaming, transform1_theory, transform2_theory


class Mode(str, enum.Enum):
    NAIVE = "naive"
    T1 = "t1"
    T2 = "t2"
    FULL = "full"


def ground_rule_via_queries(rule: Rule, program: DatalogProgram, naming: AuxNaming) -> frozenset[Rule]:
    """One ground instance of ``rule`` per derived atom of its auxiliary predicate."""
    pattern = naming.aux_atom(rule)
    out = set()
    for answer in query(program, pattern.predicate):
        sub = match(pattern, answer)
        if sub is not None:
            out.add(rule.substitute(sub))
    return frozenset(out)


def ground_contraries(contraries: Iterable[ContraryExpr], program: DatalogProgram) -> frozenset[ContraryExpr]:
    out = set()
    for c in contraries:
        for answer in query(program, c.subject.predicate):
            sub = match(c.subject, answer)
            if sub is not None:
                out.add(c.substitute(sub))
    return frozenset(out)


def ground_assumptions(assumptions: Iterable[Atom], program: DatalogProgram) -> frozenset[Atom]:
    return frozenset(a for a in assumptions if a in query(program, a.predicate))


def _translate(theory: Theory, mode: Mode) -> tuple[DatalogProgram, AuxNaming]:
    if mode == Mode.T1:
        return transform1_theory(theory)
    if mode in (Mode.T2, Mode.FULL):
        return transform2_theory(theory)
    raise ValueError(f"mode {mode!r} has no Datalog translation")


def ground_theory(theory: Theory, mode: Mode | str = Mode.T2) -> GroundTheory:
    mode = Mode(mode)
    program, naming = _translate(theory, mode)
    strict = frozenset(g for r in theory.strict for g in ground_rule_via_queries(r, program, naming))
    defeasible = frozenset(g for r in theory.defeasible for g in ground_rule_via_queries(r, program, naming))
    if mode == Mode.T1:
        assumptions = theory.assumptions
    else:
        assumptions = ground_assumptions(theory.assumptions, program)
    return GroundTheory(
        ground_contraries(theory.contraries, program),
        strict,
        defeasible,
        theory.facts,
        assumptions,
    )


def ground_theory_full(theory: Theory) -> GroundTheory:
    """Mode t2 grounding plus fact promotion along the rule dependency order.

    A ground strict rule whose body consists of facts has its head promoted
    to a fact and is dropped, unless the head is an assumption.
    """
    program, naming = transform2_theory(theory)
    facts = set(theory.facts)
    kept: set[Rule] = set()
    for component in rule_scc_order(theory):
        ground = set()
        for r in sorted(component, key=str):
            ground |= ground_rule_via_queries(r, program, naming)
        while True:
            before = len(facts)
            for r in sorted(ground, key=str):
                if isinstance(r, StrictRule) and r.body <= facts and r.head not in theory.assumptions:
                    facts.add(r.head)
                    ground.discard(r)
            if len(facts) == before:
                break
        kept |= ground
    return GroundTheory(
        ground_contraries(theory.contraries, program),
        frozenset(r for r in kept if isinstance(r, StrictRule)),
        frozenset(r for r in kept if not isinstance(r, StrictRule)),
        frozenset(facts),
        ground_assumptions(theory.assumptions, program),
    )


def ground(theory: Theory, mode: Mode | str, rule_budget: int = DEFAULT_RULE_BUDGET) -> GroundTheory:
    mode = Mode(mode)
    if mode == Mode.NAIVE:
        return naive_ground_theory(theory, rule_budget)
    if mode == Mode.FULL:
        return ground_theory_full(theory)
    return ground_theory(theory, mode)
