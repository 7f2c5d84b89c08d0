"""Extension semantics over an :class:`AttackGraph`.

Sets of arguments are handled internally as int bitmasks over argument ids.
Every complete extension contains the grounded extension ``G`` and avoids
everything ``G`` attacks, so enumeration only ranges over the arguments left
undecided by ``G`` (for admissible sets, over ``G`` and the undecided ones).
The extension budget caps the size of that pool.

Both complete extensions and admissible sets are found by a two-way
branching search: a candidate argument is either added (for complete
extensions the set is then closed under defence) or excluded.  Before each
branch the candidates are pruned of arguments that conflict with the set,
attack themselves, or have an attacker nothing left can counter-attack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .argumentation import AttackGraph
from .errors import BudgetExceeded
from .syntax import Atom

DEFAULT_EXT_BUDGET = 24

SEMANTICS = ("adm", "com", "grd", "prf", "stb")
_ALIASES = {
    "admissible": "adm",
    "complete": "com",
    "grounded": "grd",
    "preferred": "prf",
    "stable": "stb",
}


class ExtensionBudgetExceeded(BudgetExceeded):
    pass


def _canon(semantics: str) -> str:
    sem = _ALIASES.get(semantics, semantics)
    if sem not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    return sem


class _Masks:
    def __init__(self, af: AttackGraph):
        self.n = len(af)
        self.all = (1 << self.n) - 1
        self.attackers = [0] * self.n
        self.targets = [0] * self.n
        for i, j in af.pairs():
            self.attackers[j] |= 1 << i
            self.targets[i] |= 1 << j
        self.self_attacking = _to_mask(i for i in range(self.n) if self.targets[i] >> i & 1)

    def attacked_by(self, s: int) -> int:
        out = 0
        for i in _bits(s):
            out |= self.targets[i]
        return out

    def conflict_free(self, s: int) -> bool:
        return not (self.attacked_by(s) & s)

    def defended(self, s: int) -> int:
        hit = self.attacked_by(s)
        out = 0
        for a in range(self.n):
            if self.attackers[a] & ~hit == 0:
                out |= 1 << a
        return out

    def admissible(self, s: int) -> bool:
        return self.conflict_free(s) and s & ~self.defended(s) == 0

    def complete(self, s: int) -> bool:
        return self.conflict_free(s) and self.defended(s) == s

    def stable(self, s: int) -> bool:
        return self.conflict_free(s) and (s | self.attacked_by(s)) == self.all

    def grounded(self) -> int:
        s = 0
        while True:
            nxt = self.defended(s)
            if nxt == s:
                return s
            s = nxt


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _to_mask(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


def _to_set(mask: int) -> frozenset[int]:
    return frozenset(_bits(mask))


@dataclass(frozen=True)
class ExtensionSet:
    semantics: str
    extensions: tuple[frozenset[int], ...]
    claims: tuple[frozenset[Atom], ...]

    def __len__(self) -> int:
        return len(self.extensions)


def claim_sets(es: ExtensionSet) -> list[frozenset[Atom]]:
    """Distinct claim sets, in canonical order."""
    unique = set(es.claims)
    return sorted(unique, key=lambda s: (len(s), sorted(str(a) for a in s)))


def _ordered(masks: Iterable[int]) -> list[frozenset[int]]:
    return sorted({_to_set(m) for m in masks}, key=lambda s: (len(s), sorted(s)))


def _close(m: _Masks, s: int) -> int:
    # least superset of s closed under defence
    while True:
        nxt = s | m.defended(s)
        if nxt == s:
            return s
        s = nxt


def _live(m: _Masks, s: int, allowed: int) -> int | None:
    """Arguments of ``allowed`` that can still join ``s`` in an admissible set.

    Returns None when ``s`` itself can no longer be extended to one.
    """
    hit = m.attacked_by(s)
    if hit & s:
        return None
    hitting = 0
    for x in _bits(s):
        hitting |= m.attackers[x]
    pool = allowed & ~s & ~hit & ~hitting & ~m.self_attacking

    def defensible(x: int, possible: int) -> bool:
        return all(hit >> y & 1 or m.attackers[y] & possible for y in _bits(m.attackers[x]))

    while True:
        possible = s | pool
        if not all(defensible(x, possible) for x in _bits(s)):
            return None
        dead = _to_mask(x for x in _bits(pool) if not defensible(x, possible))
        if not dead:
            return pool
        pool &= ~dead


def _search(m: _Masks, base: int, allowed: int, closed: bool) -> list[int]:
    # every set s with base <= s <= base | allowed that passes the final check;
    # with ``closed`` each branch is kept closed under defence
    out: list[int] = []
    stack = [(base, allowed)]
    while stack:
        s, allowed = stack.pop()
        pool = _live(m, s, allowed)
        if pool is None:
            continue
        if not pool:
            if (m.complete if closed else m.admissible)(s):
                out.append(s)
            continue
        a = pool & -pool
        rest = pool & ~a
        stack.append((s, rest))
        t = _close(m, s | a) if closed else s | a
        if not t & ~(s | pool):
            stack.append((t, rest))
    return out


def _pool_size(m: _Masks, sem: str, g: int) -> int:
    undecided = m.all & ~g & ~m.attacked_by(g)
    return bin(undecided | g if sem == "adm" else undecided).count("1")


def _enumerate(m: _Masks, sem: str, budget: int) -> list[int]:
    g = m.grounded()
    if sem == "grd":
        return [g]
    size = _pool_size(m, sem, g)
    if size > budget:
        raise ExtensionBudgetExceeded(
            f"{size} undecided arguments exceed the extension budget of {budget}"
        )
    undecided = m.all & ~g & ~m.attacked_by(g)
    if sem == "adm":
        return _search(m, 0, g | undecided, closed=False)
    complete = _search(m, g, undecided, closed=True)
    if sem == "com":
        return complete
    if sem == "stb":
        return [s for s in complete if m.stable(s)]
    return _maximal(complete)


def _maximal(sets: list[int]) -> list[int]:
    kept: list[int] = []
    for s in sorted(sets, key=lambda m: -bin(m).count("1")):
        if not any(s & t == s for t in kept):
            kept.append(s)
    return kept


def extensions(af: AttackGraph, semantics: str, budget: int = DEFAULT_EXT_BUDGET) -> ExtensionSet:
    sem = _canon(semantics)
    exts = _ordered(_enumerate(_Masks(af), sem, budget))
    claims = tuple(frozenset(af.arguments[i].conclusion for i in e) for e in exts)
    return ExtensionSet(sem, tuple(exts), claims)


def brute_force_extensions(af: AttackGraph, semantics: str) -> list[frozenset[int]]:
    """Plain enumeration of all 2^n subsets straight from the definitions (test oracle)."""
    sem = _canon(semantics)
    m = _Masks(af)
    subsets = range(1 << m.n)
    if sem == "adm":
        return _ordered(s for s in subsets if m.admissible(s))
    complete = [s for s in subsets if m.complete(s)]
    if sem == "com":
        return _ordered(complete)
    if sem == "stb":
        return _ordered(s for s in subsets if m.stable(s))
    if sem == "grd":
        return _ordered(s for s in complete if not any(t != s and t & s == t for t in complete))
    return _ordered(s for s in complete if not any(t != s and t & s == s for t in complete))


def grounded_extension(af: AttackGraph) -> frozenset[int]:
    return _to_set(_Masks(af).grounded())


def check(af: AttackGraph, ids: Iterable[int], semantics: str, budget: int = DEFAULT_EXT_BUDGET) -> bool:
    sem = _canon(semantics)
    m = _Masks(af)
    s = _to_mask(ids)
    if sem == "adm":
        return m.admissible(s)
    if sem == "stb":
        return m.stable(s)
    if not m.complete(s):
        return False
    if sem == "com":
        return True
    if sem == "grd":
        return s == m.grounded()
    return s in _enumerate(m, "prf", budget)


def certain_and_tentative(af: AttackGraph, budget: int = DEFAULT_EXT_BUDGET) -> tuple[frozenset[int], frozenset[int]]:
    """Arguments in every complete extension, and arguments attacked by none of those."""
    complete = extensions(af, "com", budget).extensions
    certain = frozenset.intersection(*complete) if complete else frozenset()
    attackers = af.attackers()
    tentative = frozenset(i for i in range(len(af)) if not (attackers[i] & certain))
    return certain, tentative
