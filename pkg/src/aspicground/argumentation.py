"""Arguments and attacks induced by a ground theory.

Arguments are built bottom-up.  An argument whose conclusion already occurs
as the conclusion of one of its sub-arguments is not built, which keeps the
argument set finite when ground rules are cyclic; on acyclic rule sets this
restriction removes nothing.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BudgetExceeded
from .syntax import Atom, DefeasibleRule, GroundTheory, Rule

DEFAULT_ARG_BUDGET = 10**5


class ArgumentBudgetExceeded(BudgetExceeded):
    pass


class Argument:
    """A leaf (fact or assumption) or a rule applied to one sub-argument per body atom.

    Instances compare structurally and are immutable.
    """

    __slots__ = ("conclusion", "rule", "children", "is_assumption", "_hash", "_conclusions", "_text")

    def __init__(
        self,
        conclusion: Atom,
        rule: Rule | None = None,
        children: tuple["Argument", ...] = (),
        is_assumption: bool = False,
    ):
        self.conclusion = conclusion
        self.rule = rule
        self.children = children
        self.is_assumption = is_assumption
        self._hash = hash((conclusion, rule, children, is_assumption))
        concs = {conclusion}
        for c in children:
            concs |= c._conclusions
        self._conclusions = frozenset(concs)
        self._text: str | None = None

    @classmethod
    def leaf(cls, atom: Atom, is_assumption: bool = False) -> "Argument":
        return cls(atom, None, (), is_assumption)

    @classmethod
    def apply(cls, rule: Rule, children: Iterable["Argument"]) -> "Argument":
        children = tuple(children)
        if [c.conclusion for c in children] != sorted(rule.body, key=str):
            raise ValueError(f"children do not match the body of {rule}")
        return cls(rule.head, rule, children)

    def __setattr__(self, name, value):
        if hasattr(self, "_text") and name != "_text":
            raise AttributeError("Argument is immutable")
        object.__setattr__(self, name, value)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Argument) or self._hash != other._hash:
            return False
        return (
            self.conclusion == other.conclusion
            and self.rule == other.rule
            and self.is_assumption == other.is_assumption
            and self.children == other.children
        )

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    @property
    def top_rule(self) -> Rule | None:
        return self.rule

    @property
    def premises(self) -> frozenset[Atom]:
        return frozenset(a.conclusion for a in self.walk() if a.is_leaf)

    @property
    def assumption_premises(self) -> frozenset[Atom]:
        return frozenset(a.conclusion for a in self.walk() if a.is_leaf and a.is_assumption)

    @property
    def rules(self) -> frozenset[Rule]:
        return frozenset(a.rule for a in self.walk() if a.rule is not None)

    @property
    def defeasible_rules(self) -> frozenset[DefeasibleRule]:
        return frozenset(r for r in self.rules if isinstance(r, DefeasibleRule))

    @property
    def defeasible_elements(self) -> frozenset:
        return self.assumption_premises | self.defeasible_rules

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    def walk(self) -> Iterator["Argument"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def __str__(self) -> str:
        if self._text is None:
            if self.is_leaf:
                text = str(self.conclusion)
            else:
                arrow = "=>" if isinstance(self.rule, DefeasibleRule) else "->"
                inner = ", ".join(str(c) for c in self.children)
                text = f"[{inner} {arrow} {self.conclusion}]" if inner else f"[{arrow} {self.conclusion}]"
            self._text = text
        return self._text

    def __repr__(self) -> str:
        return f"Argument({self})"

    @property
    def key(self) -> str:
        """Printed form with rule names spelled out; distinguishes every argument."""
        if self.is_leaf:
            return f"{'~' if self.is_assumption else ''}{self.conclusion}"
        inner = ", ".join(c.key for c in self.children)
        if isinstance(self.rule, DefeasibleRule):
            return f"[{inner} ={self.rule.name}=> {self.conclusion}]"
        return f"[{inner} -> {self.conclusion}]"


def canonical_order(arguments: Iterable[Argument]) -> list[Argument]:
    """Leaves first, then by printed form."""
    return sorted(arguments, key=lambda a: (not a.is_leaf, str(a), a.key))


def sub_arguments(arg: Argument) -> frozenset[Argument]:
    return frozenset(arg.walk())


def weak_points(arg: Argument) -> frozenset[Atom]:
    """Assumption premises plus the name and head of every defeasible rule used."""
    out = set(arg.assumption_premises)
    for r in arg.defeasible_rules:
        out.add(r.name)
        out.add(r.head)
    return frozenset(out)


def construct_arguments(gt: GroundTheory, budget: int = DEFAULT_ARG_BUDGET) -> list[Argument]:
    """All arguments of ``gt`` in canonical order."""
    old: dict[Atom, list[Argument]] = defaultdict(list)
    delta: dict[Atom, list[Argument]] = defaultdict(list)
    for a in gt.facts:
        delta[a].append(Argument.leaf(a))
    for a in gt.assumptions:
        delta[a].append(Argument.leaf(a, is_assumption=True))
    seen: set[Argument] = {x for xs in delta.values() for x in xs}
    rules = [(r, sorted(r.body, key=str)) for r in sorted(gt.strict | gt.defeasible, key=str)]

    first = True
    while first or delta:
        new: dict[Atom, list[Argument]] = defaultdict(list)
        for rule, body in rules:
            if first and not body:
                combos: Iterable[tuple[Argument, ...]] = [()]
            else:
                combos = _delta_products(body, old, delta)
            for combo in combos:
                if any(rule.head in c._conclusions for c in combo):
                    continue
                arg = Argument(rule.head, rule, combo)
                if arg not in seen:
                    seen.add(arg)
                    new[rule.head].append(arg)
                    if len(seen) > budget:
                        raise ArgumentBudgetExceeded(f"more than {budget} arguments")
        for atom, xs in delta.items():
            old[atom].extend(xs)
        delta = new
        first = False
    return canonical_order(seen)


def _delta_products(
    body: list[Atom],
    old: dict[Atom, list[Argument]],
    delta: dict[Atom, list[Argument]],
) -> Iterator[tuple[Argument, ...]]:
    # each combination with at least one child from delta is produced exactly once
    for i, b in enumerate(body):
        if not delta.get(b):
            continue
        pools = []
        for j, c in enumerate(body):
            if j < i:
                pools.append(old.get(c, []))
            elif j == i:
                pools.append(delta[c])
            else:
                pools.append(old.get(c, []) + delta.get(c, []))
        yield from itertools.product(*pools)


@dataclass(frozen=True, order=True)
class Attack:
    attacker: int
    target: int
    kind: str  # "undercut" | "rebut" | "undermine"
    element: Atom


@dataclass(frozen=True)
class AttackGraph:
    arguments: tuple[Argument, ...]
    attacks: frozenset[Attack]

    def __len__(self) -> int:
        return len(self.arguments)

    def name(self, i: int) -> str:
        return f"A{i + 1}"

    def index(self) -> dict[Argument, int]:
        return {a: i for i, a in enumerate(self.arguments)}

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a.attacker, a.target) for a in self.attacks)

    def attackers(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in self.arguments]
        for a in self.attacks:
            out[a.target].add(a.attacker)
        return out

    def attack_relation(self) -> frozenset[tuple[Argument, Argument]]:
        """Attacks as pairs of arguments, for comparing graphs built from different groundings."""
        return frozenset((self.arguments[i], self.arguments[j]) for i, j in self.pairs())

    def to_iccma(self) -> str:
        lines = [f"arg({self.name(i)}).  % {a.conclusion}" for i, a in enumerate(self.arguments)]
        lines += [f"att({self.name(i)},{self.name(j)})." for i, j in sorted(self.pairs())]
        return "".join(line + "\n" for line in lines)


def contrary_map(gt: GroundTheory) -> dict[Atom, frozenset[Atom]]:
    out: dict[Atom, set[Atom]] = defaultdict(set)
    for c in gt.contraries:
        out[c.subject] |= c.contraries
    return {k: frozenset(v) for k, v in out.items()}


def compute_attacks(args: Iterable[Argument], gt: GroundTheory) -> AttackGraph:
    arguments = tuple(args)
    contraries = contrary_map(gt)
    by_conclusion: dict[Atom, list[int]] = defaultdict(list)
    for i, a in enumerate(arguments):
        by_conclusion[a.conclusion].append(i)

    attacks: set[Attack] = set()

    def hit(target: int, kind: str, element: Atom) -> None:
        for c in contraries.get(element, ()):
            for attacker in by_conclusion.get(c, ()):
                attacks.add(Attack(attacker, target, kind, element))

    for j, a in enumerate(arguments):
        for premise in a.assumption_premises:
            hit(j, "undermine", premise)
        for r in a.defeasible_rules:
            hit(j, "undercut", r.name)
            hit(j, "rebut", r.head)
    return AttackGraph(arguments, frozenset(attacks))


def induced_af(gt: GroundTheory, budget: int = DEFAULT_ARG_BUDGET) -> AttackGraph:
    return compute_attacks(construct_arguments(gt, budget), gt)
