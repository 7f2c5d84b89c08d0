"""Datalog with stratified negation: stratification, bottom-up evaluation, queries.

Evaluation is semi-naive and works directly on non-ground rules by joining
body atoms against the current model.  ``evaluate(program, naive=True)``
instead grounds every rule over the Herbrand universe and iterates the
immediate consequence operator; it is slow and exists as a test oracle.
"""

from __future__ import annotations

import itertools
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graphs import topological_components
from .syntax import Atom, Term

Interpretation = frozenset  # frozenset[Atom]


class NotStratifiable(ValueError):
    """The program has a dependency cycle through a negated atom."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cycle through negation: " + " -> ".join(cycle))


@dataclass(frozen=True)
class DatalogRule:
    head: Atom
    positive_body: frozenset[Atom] = frozenset()
    negative_body: frozenset[Atom] = frozenset()

    def __post_init__(self):
        if not isinstance(self.positive_body, frozenset):
            object.__setattr__(self, "positive_body", frozenset(self.positive_body))
        if not isinstance(self.negative_body, frozenset):
            object.__setattr__(self, "negative_body", frozenset(self.negative_body))

    def variables(self) -> frozenset[Term]:
        out = set(self.head.variables())
        for a in itertools.chain(self.positive_body, self.negative_body):
            out |= a.variables()
        return frozenset(out)

    def is_safe(self) -> bool:
        bound = frozenset(v for a in self.positive_body for v in a.variables())
        return self.variables() <= bound

    @property
    def is_ground(self) -> bool:
        return not self.variables()

    def substitute(self, sub) -> "DatalogRule":
        return DatalogRule(
            self.head.substitute(sub),
            frozenset(a.substitute(sub) for a in self.positive_body),
            frozenset(a.substitute(sub) for a in self.negative_body),
        )

    def without_negation(self) -> "DatalogRule":
        return DatalogRule(self.head, self.positive_body)

    def __str__(self) -> str:
        body = sorted(str(a) for a in self.positive_body) + sorted(f"not {a}" for a in self.negative_body)
        if not body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(body)}."


@dataclass(frozen=True)
class DatalogProgram:
    rules: frozenset[DatalogRule] = frozenset()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.rules, frozenset):
            object.__setattr__(self, "rules", frozenset(self.rules))

    def predicates(self) -> frozenset[str]:
        return frozenset(
            a.predicate
            for r in self.rules
            for a in itertools.chain((r.head,), r.positive_body, r.negative_body)
        )

    def constants(self) -> frozenset[Term]:
        return frozenset(
            t
            for r in self.rules
            for a in itertools.chain((r.head,), r.positive_body, r.negative_body)
            for t in a.args
            if not t.is_variable
        )

    def __str__(self) -> str:
        return format_program(self)


@dataclass(frozen=True)
class Stratification:
    level: dict[str, int]

    def strata(self) -> list[frozenset[str]]:
        if not self.level:
            return []
        out: list[set[str]] = [set() for _ in range(max(self.level.values()) + 1)]
        for p, lvl in self.level.items():
            out[lvl].add(p)
        return [frozenset(s) for s in out]

    def is_valid_for(self, program: DatalogProgram) -> bool:
        for r in program.rules:
            h = self.level[r.head.predicate]
            if any(self.level[a.predicate] > h for a in r.positive_body):
                return False
            if any(self.level[a.predicate] >= h for a in r.negative_body):
                return False
        return True


def format_program(program: DatalogProgram) -> str:
    return "".join(line + "\n" for line in sorted(str(r) for r in program.rules))


def format_model(interpretation: Iterable[Atom]) -> str:
    return "".join(line + "\n" for line in sorted(str(a) for a in interpretation))


# --------------------------------------------------------------------------
# stratification


def stratify(program: DatalogProgram) -> Stratification:
    """Minimal stratification: a predicate's level is the largest number of
    negative edges on any dependency path into it."""
    preds = sorted(program.predicates())
    succ: dict[str, set[str]] = defaultdict(set)
    neg_edges: set[tuple[str, str]] = set()
    for r in program.rules:
        h = r.head.predicate
        for a in r.positive_body:
            succ[a.predicate].add(h)
        for a in r.negative_body:
            succ[a.predicate].add(h)
            neg_edges.add((a.predicate, h))

    comps = topological_components(preds, succ)
    comp_of = {p: i for i, c in enumerate(comps) for p in c}
    for src, dst in sorted(neg_edges):
        if comp_of[src] == comp_of[dst]:
            raise NotStratifiable(_cycle(src, dst, succ, set(comps[comp_of[src]])))

    level: dict[str, int] = {}
    comp_level = [0] * len(comps)
    for i, comp in enumerate(comps):
        for p in comp:
            level[p] = comp_level[i]
        for p in comp:
            for q in succ.get(p, ()):
                j = comp_of[q]
                if j != i:
                    step = 1 if (p, q) in neg_edges else 0
                    comp_level[j] = max(comp_level[j], comp_level[i] + step)
    return Stratification(level)


def _cycle(src: str, dst: str, succ: dict[str, set[str]], within: set[str]) -> list[str]:
    # path dst ->* src inside the component, closed by the negative edge src -> dst
    parent: dict[str, str | None] = {dst: None}
    frontier = [dst]
    while frontier and src not in parent:
        nxt = []
        for p in frontier:
            for q in sorted(succ.get(p, ())):
                if q in within and q not in parent:
                    parent[q] = p
                    nxt.append(q)
        frontier = nxt
    path = [src]
    node = parent.get(src)
    while node is not None:
        path.append(node)
        node = parent[node]
    path.reverse()
    return path + [dst] if src != dst else [src, src]


# --------------------------------------------------------------------------
# evaluation

_Fact = tuple  # tuple[str, ...] of constant names


def immediate_consequence(
    ground_rules: Iterable[DatalogRule],
    i: Iterable[Atom],
    negative_context: Iterable[Atom] | None = None,
) -> frozenset[Atom]:
    """Heads of ground rules whose positive body lies in ``i`` and none of whose
    negated atoms is in ``negative_context`` (defaults to ``i``)."""
    i = frozenset(i)
    ctx = i if negative_context is None else frozenset(negative_context)
    return frozenset(
        r.head for r in ground_rules if r.positive_body <= i and not (r.negative_body & ctx)
    )


def _ground_program(program: DatalogProgram) -> list[DatalogRule]:
    universe = sorted(program.constants())
    out = []
    for r in program.rules:
        vs = sorted(r.variables())
        for values in itertools.product(universe, repeat=len(vs)):
            out.append(r.substitute(dict(zip(vs, values))))
    return out


def _evaluate_naive(program: DatalogProgram, strat: Stratification) -> frozenset[Atom]:
    ground = _ground_program(program)
    model: frozenset[Atom] = frozenset()
    for stratum in strat.strata():
        rules = [r for r in ground if r.head.predicate in stratum]
        lower = model
        current = lower
        while True:
            nxt = lower | immediate_consequence(rules, current, lower)
            if nxt == current:
                break
            current = nxt
        model = current
    return model


class _CompiledRule:
    __slots__ = ("head_pred", "head_args", "pos", "neg")

    def __init__(self, rule: DatalogRule):
        self.head_pred = rule.head.predicate
        self.head_args = rule.head.args
        self.pos = sorted(rule.positive_body, key=str)
        self.neg = sorted(rule.negative_body, key=str)


def _match(pattern: Atom, fact: _Fact, binding: dict[Term, str]) -> dict[Term, str] | None:
    out = binding
    for t, value in zip(pattern.args, fact):
        if t.is_variable:
            bound = out.get(t)
            if bound is None:
                if out is binding:
                    out = dict(binding)
                out[t] = value
            elif bound != value:
                return None
        elif t.name != value:
            return None
    return out


def _bound_count(pattern: Atom, binding: dict[Term, str]) -> int:
    return sum(1 for t in pattern.args if not t.is_variable or t in binding)


def _join(
    patterns: list[Atom],
    sources: list[set[_Fact]],
    binding: dict[Term, str],
) -> Iterator[dict[Term, str]]:
    if not patterns:
        yield binding
        return
    # most-bound atom first, then smallest relation
    best = min(
        range(len(patterns)),
        key=lambda k: (-_bound_count(patterns[k], binding), len(sources[k]), k),
    )
    pattern, source = patterns[best], sources[best]
    rest_p = patterns[:best] + patterns[best + 1 :]
    rest_s = sources[:best] + sources[best + 1 :]
    for fact in source:
        b = _match(pattern, fact, binding)
        if b is not None:
            yield from _join(rest_p, rest_s, b)


def _instantiate(args: tuple[Term, ...], binding: dict[Term, str]) -> _Fact:
    return tuple(binding[t] if t.is_variable else t.name for t in args)


def _fire(
    rule: _CompiledRule,
    sources: list[set[_Fact]],
    rels: dict[str, set[_Fact]],
    out: dict[str, set[_Fact]],
) -> None:
    for b in _join(rule.pos, sources, {}):
        if any(_instantiate(n.args, b) in rels.get(n.predicate, ()) for n in rule.neg):
            continue
        fact = _instantiate(rule.head_args, b)
        if fact not in rels.get(rule.head_pred, ()):
            out[rule.head_pred].add(fact)


def _evaluate_seminaive(program: DatalogProgram, strat: Stratification) -> frozenset[Atom]:
    rels: dict[str, set[_Fact]] = defaultdict(set)
    by_stratum: dict[int, list[_CompiledRule]] = defaultdict(list)
    for r in sorted(program.rules, key=str):
        by_stratum[strat.level[r.head.predicate]].append(_CompiledRule(r))

    for lvl in sorted(by_stratum):
        rules = by_stratum[lvl]
        stratum_preds = {r.head_pred for r in rules}
        new: dict[str, set[_Fact]] = defaultdict(set)
        for rule in rules:
            _fire(rule, [rels.get(a.predicate, set()) for a in rule.pos], rels, new)
        while any(new.values()):
            delta = new
            for p, facts in delta.items():
                rels[p] |= facts
            new = defaultdict(set)
            for rule in rules:
                for k, a in enumerate(rule.pos):
                    if a.predicate not in stratum_preds or not delta.get(a.predicate):
                        continue
                    sources = [rels.get(b.predicate, set()) for b in rule.pos]
                    sources[k] = delta[a.predicate]
                    _fire(rule, sources, rels, new)

    return frozenset(
        Atom(p, tuple(Term(c) for c in fact)) for p, facts in rels.items() for fact in facts
    )


def evaluate(program: DatalogProgram, naive: bool = False) -> frozenset[Atom]:
    """Least model of a stratified program, computed stratum by stratum."""
    key = "naive" if naive else "model"
    with program._lock:
        cached = program._cache.get(key)
        if cached is not None:
            return cached
    for r in program.rules:
        if not r.is_safe():
            raise ValueError(f"unsafe Datalog rule: {r}")
    strat = stratify(program)
    model = _evaluate_naive(program, strat) if naive else _evaluate_seminaive(program, strat)
    with program._lock:
        program._cache[key] = model
        program._cache.pop("by_pred", None)
    return model


def query(program: DatalogProgram, predicate: str) -> frozenset[Atom]:
    """All derived atoms with the given predicate (empty for unknown predicates)."""
    model = evaluate(program)
    with program._lock:
        by_pred = program._cache.get("by_pred")
        if by_pred is None:
            by_pred = defaultdict(set)
            for a in model:
                by_pred[a.predicate].add(a)
            by_pred = {p: frozenset(s) for p, s in by_pred.items()}
            program._cache["by_pred"] = by_pred
    return by_pred.get(predicate, frozenset())
