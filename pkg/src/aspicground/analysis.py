"""Predicate dependencies, approximated predicates and the rule dependency order.

An edge ``(p_from, p_to)`` means that ``p_to`` depends on ``p_from``.
Positive edges come from rule bodies, negative edges from the contraries of
defeasible elements (rule names and heads of defeasible rules, assumption
atoms).  Only rule heads receive edges by default.  With
``include_names=True`` the name atom of a defeasible rule is treated like a
second head; that graph is a superset and is what the Datalog translation
relies on, since the translation derives name atoms as well.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .graphs import strongly_connected_components, topological_components
from .syntax import DefeasibleRule, Rule, Theory


@dataclass(frozen=True)
class PredDepGraph:
    nodes: frozenset[str]
    pos_edges: frozenset[tuple[str, str]]
    neg_edges: frozenset[tuple[str, str]]

    def successors(self) -> dict[str, set[str]]:
        succ: dict[str, set[str]] = defaultdict(set)
        for a, b in self.pos_edges | self.neg_edges:
            succ[a].add(b)
        return succ

    def to_dot(self) -> str:
        lines = ["digraph deps {"]
        lines += [f'  "{n}";' for n in sorted(self.nodes)]
        lines += [f'  "{a}" -> "{b}";' for a, b in sorted(self.pos_edges)]
        lines += [f'  "{a}" -> "{b}" [style=dashed];' for a, b in sorted(self.neg_edges)]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SccOrder:
    components: tuple[frozenset[Rule], ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


def _contrary_preds(theory: Theory) -> dict[str, set[str]]:
    out: dict[str, set[str]] = defaultdict(set)
    for c in theory.contraries:
        out[c.subject.predicate] |= {a.predicate for a in c.contraries}
    return out


def pred_dependencies(theory: Theory, include_names: bool = False) -> PredDepGraph:
    contrary = _contrary_preds(theory)
    pos: set[tuple[str, str]] = set()
    neg: set[tuple[str, str]] = set()
    for r in theory.strict:
        pos |= {(b.predicate, r.head.predicate) for b in r.body}
    for r in theory.defeasible:
        targets = {r.head.predicate, r.name.predicate} if include_names else {r.head.predicate}
        attackers = contrary.get(r.head.predicate, set()) | contrary.get(r.name.predicate, set())
        for t in targets:
            pos |= {(b.predicate, t) for b in r.body}
            neg |= {(q, t) for q in attackers}
    for a in theory.assumptions:
        neg |= {(q, a.predicate) for q in contrary.get(a.predicate, ())}
    return PredDepGraph(theory.predicates(), frozenset(pos), frozenset(neg))


def approximated_predicates(theory: Theory, include_names: bool = False) -> frozenset[str]:
    """Predicates on, or depending on, a dependency cycle with a negative edge."""
    g = pred_dependencies(theory, include_names)
    succ = g.successors()
    comps = strongly_connected_components(sorted(g.nodes), succ)
    comp_of = {p: i for i, c in enumerate(comps) for p in c}
    seeds = {p for a, b in g.neg_edges if comp_of[a] == comp_of[b] for p in comps[comp_of[a]]}
    approx = set(seeds)
    stack = list(seeds)
    while stack:
        p = stack.pop()
        for q in succ.get(p, ()):
            if q not in approx:
                approx.add(q)
                stack.append(q)
    return frozenset(approx)


def non_approximated_predicates(theory: Theory, include_names: bool = False) -> frozenset[str]:
    return theory.predicates() - approximated_predicates(theory, include_names)


def rule_dependencies(theory: Theory) -> dict[Rule, set[Rule]]:
    """``r2 in deps[r1]`` iff some atom produced by ``r1`` has a predicate used in the body of ``r2``."""
    consumers: dict[str, set[Rule]] = defaultdict(set)
    for r in theory.rules:
        for b in r.body:
            consumers[b.predicate].add(r)
    deps: dict[Rule, set[Rule]] = {}
    for r in theory.rules:
        produced = {r.head.predicate}
        if isinstance(r, DefeasibleRule):
            produced.add(r.name.predicate)
        deps[r] = set().union(*(consumers.get(p, set()) for p in produced))
    return deps


def rule_scc_order(theory: Theory) -> SccOrder:
    deps = rule_dependencies(theory)
    comps = topological_components(sorted(theory.rules, key=str), deps, key=str)
    return SccOrder(tuple(frozenset(c) for c in comps))
