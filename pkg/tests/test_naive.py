import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspicground.naive import GroundingBudgetExceeded, naive_ground_rule, naive_ground_theory
from aspicground.syntax import ContraryExpr, StrictRule, Term, atom, format_theory, herbrand_universe, parse_theory

U12 = {Term("1"), Term("2")}


def rule(text):
    return next(iter(parse_theory(text).rules))


def test_example2_instances():
    got = {str(r) for r in naive_ground_rule(rule("b(X) <- f(X,Y)."), U12)}
    assert got == {"b(1) <- f(1,1).", "b(1) <- f(1,2).", "b(2) <- f(2,1).", "b(2) <- f(2,2)."}


def test_ground_rule_is_fixed_point():
    r = rule("b(1) <- f(1,2).")
    assert naive_ground_rule(r, {Term("7"), Term("8")}) == {r}


def test_contrary_instances():
    c = ContraryExpr(atom("a(X)"), frozenset({atom("b(X)")}))
    assert {str(g) for g in naive_ground_rule(c, U12)} == {"contrary a(1): b(1).", "contrary a(2): b(2)."}


def test_empty_universe():
    assert naive_ground_rule(rule("b(X) <- f(X,Y)."), set()) == frozenset()


def test_running(running):
    gt = naive_ground_theory(running)
    assert len(gt.contraries) == 6
    assert {str(r) for r in gt.strict} == {
        "b(1) <- f(1,1).",
        "b(1) <- f(1,2).",
        "b(2) <- f(2,1).",
        "b(2) <- f(2,2).",
        "e(1) <- c(1).",
        "e(2) <- c(2).",
    }
    assert {str(r) for r in gt.defeasible} == {"n_d(1): c(1) <= a(1).", "n_d(2): c(2) <= a(2)."}
    assert gt.facts == running.facts and gt.assumptions == running.assumptions


def test_adm_gap_unchanged(adm_gap):
    assert format_theory(naive_ground_theory(adm_gap)) == format_theory(adm_gap)


def test_idempotent(running):
    once = naive_ground_theory(running)
    assert naive_ground_theory(once) == once


def test_budget():
    t = parse_theory("p(X,Y,Z) <- q(X,Y,Z). fact q(1,2,3). fact q(4,5,6).")
    with pytest.raises(GroundingBudgetExceeded):
        naive_ground_theory(t, max_instances=100)
    assert len(naive_ground_theory(t, max_instances=216).strict) == 216


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(1, 3))
def test_instance_count(n_consts, n_vars):
    vs = [f"X{i}" for i in range(n_vars)]
    r = StrictRule(frozenset({atom(f"q({','.join(vs)})")}), atom(f"p({vs[0]})"))
    universe = {Term(f"c{i}") for i in range(n_consts)}
    assert len(naive_ground_rule(r, universe)) == n_consts**n_vars


def test_universe_used_is_theory_universe(running):
    gt = naive_ground_theory(running)
    used = {t for r in gt.rules for a in r.atoms() for t in a.args}
    assert used == herbrand_universe(running)
