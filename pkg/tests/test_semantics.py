import itertools
import random

import pytest

from aspicground.argumentation import Argument, Attack, AttackGraph, induced_af
from aspicground.grounder import ground
from aspicground.semantics import (
    ExtensionBudgetExceeded,
    ExtensionSet,
    brute_force_extensions,
    certain_and_tentative,
    check,
    claim_sets,
    extensions,
    grounded_extension,
)
from aspicground.syntax import GroundTheory, atom

from corpus import corpus_theory


def ids(af, *texts):
    index = {str(a): i for i, a in enumerate(af.arguments)}
    return frozenset(index[t] for t in texts)


@pytest.fixture
def naive_running(running):
    return induced_af(ground(running, "naive"))


@pytest.fixture
def naive10(adm_gap):
    return induced_af(GroundTheory.of(adm_gap))


def test_running_complete(naive_running):
    e = ids(naive_running, "a(2)", "f(1,2)", "[f(1,2) -> b(1)]")
    assert check(naive_running, e, "com")
    assert extensions(naive_running, "com").extensions == (e,)
    assert extensions(naive_running, "grd").extensions == (e,)
    assert extensions(naive_running, "prf").extensions == (e,)


def test_empty_set_admissible(naive_running, naive10):
    assert check(naive_running, [], "adm") and check(naive10, [], "adm")


def test_running_no_stable(naive_running):
    assert extensions(naive_running, "stb").extensions == ()
    for k in range(len(naive_running) + 1):
        for s in itertools.combinations(range(len(naive_running)), k):
            assert not check(naive_running, s, "stb")


def test_running_admissible_sets(naive_running):
    e = sorted(ids(naive_running, "a(2)", "f(1,2)", "[f(1,2) -> b(1)]"))
    subsets = {frozenset(c) for k in range(4) for c in itertools.combinations(e, k)}
    assert set(extensions(naive_running, "adm").extensions) == subsets


def test_adm_gap_admissible(naive10, adm_gap):
    fam = {frozenset(str(naive10.arguments[i]) for i in s) for s in extensions(naive10, "adm").extensions}
    assert fam == {frozenset(), frozenset({"a"}), frozenset({"a", "c"})}
    t2 = induced_af(ground(adm_gap, "t2"))
    fam2 = {frozenset(str(t2.arguments[i]) for i in s) for s in extensions(t2, "adm").extensions}
    assert fam2 == fam | {frozenset({"c"})}


def test_certain_and_tentative(naive_running, naive10):
    certain, tentative = certain_and_tentative(naive_running)
    assert certain == ids(naive_running, "a(2)", "f(1,2)", "[f(1,2) -> b(1)]")
    assert certain <= tentative
    certain, tentative = certain_and_tentative(naive10)
    assert certain == ids(naive10, "a", "c")
    assert tentative == ids(naive10, "a", "c")


def test_attack_free_af():
    args = tuple(Argument.leaf(atom(f"p{i}")) for i in range(4))
    af = AttackGraph(args, frozenset())
    certain, tentative = certain_and_tentative(af)
    assert certain == tentative == frozenset(range(4))


def test_claim_sets(running, naive_running):
    assert claim_sets(extensions(naive_running, "com")) == [{atom("f(1,2)"), atom("b(1)"), atom("a(2)")}]
    full = induced_af(ground(running, "full"))
    assert claim_sets(extensions(full, "com")) == [{atom("f(1,2)"), atom("b(1)"), atom("a(2)")}]
    empty = ExtensionSet("com", (frozenset(),), (frozenset(),))
    assert claim_sets(empty) == [frozenset()]


def test_claim_sets_deduplicate():
    es = ExtensionSet("prf", (frozenset({0}), frozenset({1})), (frozenset({atom("p")}), frozenset({atom("p")})))
    assert claim_sets(es) == [{atom("p")}]


def test_aliases_and_unknown(naive_running):
    assert extensions(naive_running, "complete").extensions == extensions(naive_running, "com").extensions
    with pytest.raises(ValueError):
        extensions(naive_running, "semi-stable")


def test_budget_keeps_grounded_available():
    n = 30
    args = tuple(Argument.leaf(atom(f"p{i}")) for i in range(n))
    # 15 mutually attacking pairs: nothing is decided by the grounded extension
    attacks = frozenset(
        Attack(i, j, "undermine", atom(f"p{j}")) for k in range(0, n, 2) for i, j in ((k, k + 1), (k + 1, k))
    )
    af = AttackGraph(args, attacks)
    with pytest.raises(ExtensionBudgetExceeded):
        extensions(af, "com", budget=24)
    assert extensions(af, "grd").extensions == (frozenset(),)


def test_independent_pairs_counts():
    args = tuple(Argument.leaf(atom(f"p{i}")) for i in range(10))
    attacks = frozenset(
        Attack(i, j, "undermine", atom(f"p{j}")) for k in range(0, 10, 2) for i, j in ((k, k + 1), (k + 1, k))
    )
    af = AttackGraph(args, attacks)
    assert len(extensions(af, "com")) == 3**5
    assert len(extensions(af, "prf")) == 2**5
    assert len(extensions(af, "stb")) == 2**5


# test-local oracle straight from the definitions, on Python sets

def oracle(af, sem):
    n = len(af)
    att = af.pairs()
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]

    def cf(s):
        return not any((a, b) in att for a in s for b in s)

    def defends(s, x):
        return all(any((z, y) in att for z in s) for y in range(n) if (y, x) in att)

    adm = [s for s in subsets if cf(s) and all(defends(s, x) for x in s)]
    com = [s for s in adm if all(x in s for x in range(n) if defends(s, x))]
    if sem == "adm":
        return set(adm)
    if sem == "com":
        return set(com)
    if sem == "grd":
        return {s for s in com if not any(t < s for t in com)}
    if sem == "prf":
        return {s for s in com if not any(s < t for t in com)}
    return {s for s in subsets if cf(s) and all(any((a, x) in att for a in s) for x in range(n) if x not in s)}


def random_afs(count, seed, max_n=8):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(0, max_n)
        p = rng.choice([0.1, 0.2, 0.35])
        args = tuple(Argument.leaf(atom(f"x{i}")) for i in range(n))
        att = frozenset(
            Attack(i, j, "undermine", atom(f"x{j}")) for i in range(n) for j in range(n) if rng.random() < p
        )
        yield AttackGraph(args, att)


@pytest.mark.parametrize("sem", ["adm", "com", "grd", "prf", "stb"])
def test_enumeration_matches_definitional_oracle(sem):
    for af in random_afs(300, seed=hash(sem) % 1000):
        got = extensions(af, sem)
        assert set(got.extensions) == oracle(af, sem)
        assert list(got.extensions) == brute_force_extensions(af, sem)
        assert all(check(af, e, sem) for e in got.extensions)


def test_semantic_relationships():
    for af in random_afs(300, seed=7, max_n=10):
        com = set(extensions(af, "com").extensions)
        grd = extensions(af, "grd").extensions
        assert grd == (grounded_extension(af),)
        assert grounded_extension(af) == min(com, key=len)
        assert all(grounded_extension(af) <= e for e in com)
        assert set(extensions(af, "stb").extensions) <= com
        assert set(extensions(af, "prf").extensions) <= com
        assert set(extensions(af, "prf").extensions)  # preferred always exists
        attackers = af.attackers()
        for e in com:
            defended = {x for x in range(len(af)) if all(any((z, y) in af.pairs() for z in e) for y in attackers[x])}
            assert defended <= e


def test_corpus_afs_match_brute_force():
    for seed in range(60):
        af = induced_af(ground(corpus_theory(seed), "naive"))
        if len(af) > 14:
            continue
        for sem in ("adm", "com", "prf", "stb"):
            assert list(extensions(af, sem).extensions) == brute_force_extensions(af, sem)
