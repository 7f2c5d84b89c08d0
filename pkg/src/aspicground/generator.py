"""Seeded random generator of first-order theories.

Random numbers come from SplitMix64 (Steele, Lea, Flood 2014), so a seed
gives the same theory in any implementation of the scheme below:

* Literal arities follow ``arity_dist``.  Each arity ``a`` has a pool of
  ``preds_per_arity`` predicates ``p<a>_<k>``; a literal of arity ``a`` picks
  one uniformly.
* A rule picks ``1..max_vars_per_rule`` variables ``X1..Xk`` uniformly, a
  body length from ``body_len_dist``, and fills every body argument with a
  uniformly chosen variable (or, with ``rule_constant_prob``, a constant).
  Head and rule-name arguments are drawn from the body's variables, which
  makes every rule safe.  With ``acyclic`` the head predicate is drawn from
  the predicates ranked after every body predicate (a fresh predicate
  ``q<a>_<k>`` is created if there is none), so positive dependencies never
  form a cycle.
* Defeasible rule ``i`` is named by a fresh predicate ``n<i>``.  Name
  predicates occur nowhere else except as contrary subjects: the Datalog
  translation derives name atoms that no argument concludes, so a name used
  as a body atom, fact or contrary atom would make the optimized groundings
  drop arguments they must keep.
* A contrary expression picks its subject predicate uniformly among all
  predicates used so far (names included), gives it distinct variables
  ``Y1..Ya``, and draws ``contrary_size_dist`` contrary atoms over the used
  non-name predicates, with arguments drawn from the subject's variables.
* Knowledge-base atoms use constants drawn uniformly from
  ``constant_range``; each is an assumption with probability
  ``assumption_ratio`` and a fact otherwise.

Duplicates are redrawn, so the counts in the config are met exactly when
the space allows it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence, TypeVar

from .syntax import Atom, ContraryExpr, DefeasibleRule, StrictRule, Term, Theory

_MASK64 = (1 << 64) - 1

T = TypeVar("T")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + int(self.random() * (hi - lo + 1))

    def choice(self, items: Sequence[T]) -> T:
        return items[int(self.random() * len(items))]

    def sample(self, dist: Sequence[tuple[int, float]]) -> int:
        """Draw from a discrete distribution given as (value, probability) pairs."""
        u = self.random()
        acc = 0.0
        for value, p in dist:
            acc += p
            if u < acc:
                return value
        return dist[-1][0]


def _split(values_low: range, values_high: range, p_low: float) -> tuple[tuple[int, float], ...]:
    lo = [(v, p_low / len(values_low)) for v in values_low]
    hi = [(v, (1 - p_low) / len(values_high)) for v in values_high]
    return tuple(lo + hi)


# arity 1..5, 80% mass on 1..3
ARITY_DIST = _split(range(1, 4), range(4, 6), 0.8)
# body length 1..10, 80% mass on 1..4
BODY_LEN_DIST = _split(range(1, 5), range(5, 11), 0.8)
# contrary size uniform on 1..3
CONTRARY_SIZE_DIST = tuple((v, 1 / 3) for v in range(1, 4))


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n_strict: int = 5
    n_defeasible: int = 5
    n_contraries: int = 7
    max_vars_per_rule: int = 3
    n_atoms_in_kb: int = 50
    constant_range: tuple[int, int] = (0, 30)
    arity_dist: tuple[tuple[int, float], ...] = ARITY_DIST
    body_len_dist: tuple[tuple[int, float], ...] = BODY_LEN_DIST
    contrary_size_dist: tuple[tuple[int, float], ...] = CONTRARY_SIZE_DIST
    preds_per_arity: int = 3
    assumption_ratio: float = 0.5
    rule_constant_prob: float = 0.0
    acyclic: bool = False

    def validate(self) -> None:
        for name in ("n_strict", "n_defeasible", "n_contraries", "n_atoms_in_kb"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.max_vars_per_rule < 1:
            raise ValueError("max_vars_per_rule must be >= 1")
        if self.preds_per_arity < 1:
            raise ValueError("preds_per_arity must be >= 1")
        lo, hi = self.constant_range
        if lo < 0 or lo > hi:
            raise ValueError(f"invalid constant range [{lo}, {hi}]")
        for name in ("arity_dist", "body_len_dist", "contrary_size_dist"):
            dist = getattr(self, name)
            if not dist or any(p < 0 for _, p in dist) or abs(sum(p for _, p in dist) - 1) > 1e-9:
                raise ValueError(f"{name} must be a probability distribution")
            if any(v < 1 for v, _ in dist):
                raise ValueError(f"{name} values must be >= 1")
        for name in ("assumption_ratio", "rule_constant_prob"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")

    def with_seed(self, seed: int) -> "GenConfig":
        return replace(self, seed=seed)


def sample_arity(rng: SplitMix64, config: GenConfig) -> int:
    return rng.sample(config.arity_dist)


def sample_body_length(rng: SplitMix64, config: GenConfig) -> int:
    return rng.sample(config.body_len_dist)


def sample_contrary_size(rng: SplitMix64, config: GenConfig) -> int:
    return rng.sample(config.contrary_size_dist)


@dataclass
class _State:
    config: GenConfig
    rng: SplitMix64
    ranked: list[str] = field(default_factory=list)  # predicates by creation order
    arity: dict[str, int] = field(default_factory=dict)
    by_arity: dict[int, list[str]] = field(default_factory=dict)
    used: list[str] = field(default_factory=list)
    fresh: int = 0

    def new_predicate(self, name: str, arity: int) -> str:
        self.ranked.append(name)
        self.arity[name] = arity
        self.by_arity.setdefault(arity, []).append(name)
        return name

    def use(self, pred: str) -> None:
        if pred not in self.used:
            self.used.append(pred)

    def constant(self) -> Term:
        lo, hi = self.config.constant_range
        return Term(str(self.rng.randint(lo, hi)))


def _init_state(config: GenConfig) -> _State:
    st = _State(config, SplitMix64(config.seed))
    for k in range(config.preds_per_arity):
        for a, _ in sorted(config.arity_dist):
            st.new_predicate(f"p{a}_{k}", a)
    return st


def _body_atom(st: _State, variables: list[Term]) -> Atom:
    a = sample_arity(st.rng, st.config)
    pred = st.rng.choice(st.by_arity[a])
    args = tuple(
        st.constant() if st.rng.random() < st.config.rule_constant_prob else st.rng.choice(variables)
        for _ in range(a)
    )
    return Atom(pred, args)


def _derived_atom(st: _State, pred: str, pool: list[Term]) -> Atom:
    args = tuple(st.rng.choice(pool) if pool else st.constant() for _ in range(st.arity[pred]))
    return Atom(pred, args)


def _head_predicate(st: _State, body: list[Atom]) -> str:
    a = sample_arity(st.rng, st.config)
    if not st.config.acyclic:
        return st.rng.choice(st.by_arity[a])
    floor = max(st.ranked.index(b.predicate) for b in body)
    candidates = [p for p in st.by_arity[a] if st.ranked.index(p) > floor]
    if candidates:
        return st.rng.choice(candidates)
    st.fresh += 1
    return st.new_predicate(f"q{a}_{st.fresh}", a)


def _rule_parts(st: _State) -> tuple[frozenset[Atom], Atom, list[Term]]:
    k = st.rng.randint(1, st.config.max_vars_per_rule)
    variables = [Term(f"X{i}") for i in range(1, k + 1)]
    body = [_body_atom(st, variables) for _ in range(sample_body_length(st.rng, st.config))]
    body_vars = sorted({v for b in body for v in b.variables()})
    head = _derived_atom(st, _head_predicate(st, body), body_vars)
    return frozenset(body), head, body_vars


def _fill(target: int, draw, limit_factor: int = 50) -> set:
    out: set = set()
    attempts = 0
    while len(out) < target and attempts < limit_factor * max(target, 1):
        out.add(draw())
        attempts += 1
    return out


def generate(config: GenConfig) -> Theory:
    config.validate()
    st = _init_state(config)

    def strict_rule() -> StrictRule:
        body, head, _ = _rule_parts(st)
        return StrictRule(body, head)

    strict = sorted(_fill(config.n_strict, strict_rule), key=str)

    def defeasible_rule() -> DefeasibleRule:
        body, head, body_vars = _rule_parts(st)
        name_pred = f"n{len(defeasible) + 1}"
        arity = sample_arity(st.rng, config)
        name = Atom(name_pred, tuple(st.rng.choice(body_vars) if body_vars else st.constant() for _ in range(arity)))
        return DefeasibleRule(name, body, head)

    defeasible: list[DefeasibleRule] = []
    seen_bodies: set[tuple] = set()
    attempts = 0
    while len(defeasible) < config.n_defeasible and attempts < 50 * max(config.n_defeasible, 1):
        attempts += 1
        r = defeasible_rule()
        key = (r.body, r.head)
        if key in seen_bodies:
            continue
        seen_bodies.add(key)
        defeasible.append(r)
        st.arity[r.name.predicate] = r.name.arity

    for r in strict:
        for a in r.atoms():
            st.use(a.predicate)
    for r in defeasible:
        for a in (*sorted(r.body), r.head):
            st.use(a.predicate)

    def kb_atom() -> Atom:
        a = sample_arity(st.rng, config)
        pred = st.rng.choice(st.by_arity[a])
        return Atom(pred, tuple(st.constant() for _ in range(a)))

    kb = sorted(_fill(config.n_atoms_in_kb, kb_atom), key=str)
    facts, assumptions = set(), set()
    for a in kb:
        st.use(a.predicate)
        (assumptions if st.rng.random() < config.assumption_ratio else facts).add(a)

    names = [r.name.predicate for r in defeasible]

    def contrary() -> ContraryExpr:
        pool = st.used or st.ranked
        subject_pred = st.rng.choice(pool + names)
        ys = [Term(f"Y{i}") for i in range(1, st.arity[subject_pred] + 1)]
        size = sample_contrary_size(st.rng, config)
        atoms = frozenset(_derived_atom(st, st.rng.choice(pool), ys) for _ in range(size))
        return ContraryExpr(Atom(subject_pred, tuple(ys)), atoms)

    contraries = _fill(config.n_contraries, contrary)
    return Theory(
        frozenset(contraries),
        frozenset(strict),
        frozenset(defeasible),
        frozenset(facts),
        frozenset(assumptions),
    )
