"""Translation of a first-order theory into the auxiliary Datalog program.

Every rule ``r`` with body ``B(X)`` gets a fresh predicate ``__r<k>`` whose
arguments are the body variables ``X`` (sorted by name)::

    __r<k>(X) :- B(X).              # plus ``not l(..)`` literals in mode t2
    head      :- __r<k>(X).
    name      :- __r<k>(X).         # defeasible rules only

Facts and assumptions become bodiless rules.  In mode t2 an assumption gets
the negated non-approximated contraries as its body.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .analysis import approximated_predicates
from .datalog import DatalogProgram, DatalogRule, NotStratifiable, stratify
from .syntax import RESERVED_PREFIX, Atom, ContraryExpr, DefeasibleRule, Rule, Term, Theory


@dataclass(frozen=True)
class AuxNaming:
    aux_of: dict[Rule, str]
    rule_of: dict[str, Rule]

    @classmethod
    def for_rules(cls, rules: Iterable[Rule]) -> "AuxNaming":
        ordered = sorted(rules, key=str)
        aux_of = {r: f"{RESERVED_PREFIX}r{k}" for k, r in enumerate(ordered, start=1)}
        return cls(aux_of, {v: r for r, v in aux_of.items()})

    def aux_atom(self, rule: Rule) -> Atom:
        return aux_atom(rule, self.aux_of[rule])


def aux_atom(rule: Rule, aux: str) -> Atom:
    return Atom(aux, tuple(sorted(rule.body_variables())))


def transform1_rule(rule: Rule, aux: str) -> frozenset[DatalogRule]:
    n = aux_atom(rule, aux)
    out = {DatalogRule(n, rule.body), DatalogRule(rule.head, frozenset([n]))}
    if isinstance(rule, DefeasibleRule):
        out.add(DatalogRule(rule.name, frozenset([n])))
    return frozenset(out)


def transform1_theory(theory: Theory) -> tuple[DatalogProgram, AuxNaming]:
    naming = AuxNaming.for_rules(theory.rules)
    rules: set[DatalogRule] = set()
    for r in theory.rules:
        rules |= transform1_rule(r, naming.aux_of[r])
    rules |= {DatalogRule(a) for a in theory.facts | theory.assumptions}
    return DatalogProgram(frozenset(rules)), naming


def instantiate_contraries(element: Atom, contraries: Iterable[ContraryExpr]) -> frozenset[Atom]:
    """Contrary atoms of ``element``, with the expression's variables renamed to
    the element's terms.

    An expression whose subject repeats a variable where the element has two
    different terms, at least one of them a variable, applies only to some
    instances of the element.  Such expressions are skipped: a Datalog body
    literal cannot be made conditional on an equality.
    """
    out: set[Atom] = set()
    for c in contraries:
        subject = c.subject
        if subject.predicate != element.predicate or subject.arity != element.arity:
            continue
        sub: dict[Term, Term] = {}
        usable = True
        for s, e in zip(subject.args, element.args):
            bound = sub.setdefault(s, e)
            if bound != e:
                usable = False
                break
        if usable:
            out |= {a.substitute(sub) for a in c.contraries}
    return frozenset(out)


def transform2_rule(
    rule: Rule,
    aux: str,
    non_approx: frozenset[str],
    contraries: Iterable[ContraryExpr],
) -> frozenset[DatalogRule]:
    base = transform1_rule(rule, aux)
    if not isinstance(rule, DefeasibleRule):
        return base
    contraries = list(contraries)
    negated = frozenset(
        a
        for element in rule.defeasible_elements
        for a in instantiate_contraries(element, contraries)
        if a.predicate in non_approx
    )
    n = aux_atom(rule, aux)
    return frozenset(
        DatalogRule(r.head, r.positive_body, negated) if r.head == n else r for r in base
    )


def transform2_assumption(
    atom: Atom,
    non_approx: frozenset[str],
    contraries: Iterable[ContraryExpr],
) -> DatalogRule:
    negated = frozenset(a for a in instantiate_contraries(atom, contraries) if a.predicate in non_approx)
    return DatalogRule(atom, frozenset(), negated)


def transform2_theory(theory: Theory) -> tuple[DatalogProgram, AuxNaming]:
    naming = AuxNaming.for_rules(theory.rules)
    non_approx = theory.predicates() - approximated_predicates(theory, include_names=True)
    contraries = sorted(theory.contraries, key=str)
    rules: set[DatalogRule] = set()
    for r in theory.rules:
        rules |= transform2_rule(r, naming.aux_of[r], non_approx, contraries)
    rules |= {DatalogRule(a) for a in theory.facts}
    rules |= {transform2_assumption(a, non_approx, contraries) for a in theory.assumptions}
    program = DatalogProgram(frozenset(rules))
    try:
        stratify(program)
    except NotStratifiable as exc:  # pragma: no cover - would mean the analysis is wrong
        raise AssertionError(f"translation is not stratified: {exc}") from exc
    return program, naming
