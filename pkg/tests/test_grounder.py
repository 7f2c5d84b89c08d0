from aspicground.grounder import (
    Mode,
    ground,
    ground_assumptions,
    ground_contraries,
    ground_rule_via_queries,
    ground_theory,
    ground_theory_full,
)
from aspicground.naive import naive_ground_theory
from aspicground.syntax import atom, format_theory, match, parse_theory
from aspicground.transform import transform1_theory, transform2_theory

from corpus import corpus_theory


def strs(xs):
    return {str(x) for x in xs}


def rule_of(theory, pred):
    return next(r for r in theory.rules if r.head.predicate == pred)


def test_algorithm1_t1(running):
    program, naming = transform1_theory(running)
    assert strs(ground_rule_via_queries(rule_of(running, "b"), program, naming)) == {"b(1) <- f(1,2)."}
    assert strs(ground_rule_via_queries(rule_of(running, "c"), program, naming)) == {
        "n_d(1): c(1) <= a(1).",
        "n_d(2): c(2) <= a(2).",
    }


def test_algorithm1_t2(running):
    program, naming = transform2_theory(running)
    assert strs(ground_rule_via_queries(rule_of(running, "c"), program, naming)) == {"n_d(2): c(2) <= a(2)."}


def test_contraries(running):
    p1, _ = transform1_theory(running)
    p2, _ = transform2_theory(running)
    a_expr = [c for c in running.contraries if c.subject.predicate == "a"]
    assert strs(ground_contraries(a_expr, p1)) == {"contrary a(1): b(1).", "contrary a(2): b(2)."}
    assert strs(ground_contraries(a_expr, p2)) == {"contrary a(2): b(2)."}
    t = parse_theory("contrary z(X): b(X). fact b(1).")
    assert ground_contraries(t.contraries, transform1_theory(t)[0]) == frozenset()


def test_assumptions(running, adm_gap):
    assert ground_assumptions(running.assumptions, transform2_theory(running)[0]) == {atom("a(2)")}
    assert ground_assumptions(adm_gap.assumptions, transform2_theory(adm_gap)[0]) == {atom("c")}
    t = parse_theory("assume p(1). assume p(2).")
    assert ground_assumptions(t.assumptions, transform2_theory(t)[0]) == t.assumptions


def test_t1_running(running):
    gt = ground_theory(running, Mode.T1)
    naive = naive_ground_theory(running)
    never_firing = {"b(1) <- f(1,1).", "b(2) <- f(2,1).", "b(2) <- f(2,2)."}
    assert strs(gt.strict) == strs(naive.strict) - never_firing
    assert gt.defeasible == naive.defeasible
    assert gt.contraries == naive.contraries
    assert gt.assumptions == naive.assumptions and gt.facts == naive.facts


def test_t2_running(running):
    gt = ground_theory(running, Mode.T2)
    assert strs(gt.facts) == {"f(1,2)"}
    assert strs(gt.assumptions) == {"a(2)"}
    assert strs(gt.strict) == {"b(1) <- f(1,2).", "e(2) <- c(2)."}
    assert strs(gt.defeasible) == {"n_d(2): c(2) <= a(2)."}
    assert strs(gt.contraries) == {"contrary a(2): b(2).", "contrary c(2): d(2).", "contrary n_d(2): e(2)."}


def test_t2_adm_gap(adm_gap):
    gt = ground_theory(adm_gap, Mode.T2)
    assert strs(gt.facts) == {"a"} and strs(gt.assumptions) == {"c"}
    assert strs(gt.contraries) == {"contrary c: b."}


def test_full_running(running):
    gt = ground_theory_full(running)
    assert format_theory(gt) == (
        "contrary a(2): b(2).\n"
        "contrary c(2): d(2).\n"
        "contrary n_d(2): e(2).\n"
        "e(2) <- c(2).\n"
        "n_d(2): c(2) <= a(2).\n"
        "assume a(2).\n"
        "fact b(1).\n"
        "fact f(1,2).\n"
    )


def test_full_without_strict_rules_equals_t2(adm_gap):
    t = parse_theory("contrary q(X): r(X). n(X): q(X) <= p(X). assume p(1). fact p(2). assume r(2).")
    assert ground_theory_full(t) == ground_theory(t, Mode.T2)
    assert ground_theory_full(adm_gap) == ground_theory(adm_gap, Mode.T2)


def test_promotion_chain():
    t = parse_theory("fact p. q <- p. s <- q.")
    gt = ground_theory_full(t)
    assert strs(gt.facts) == {"p", "q", "s"}
    assert gt.strict == frozenset()


def test_assumption_heads_are_not_promoted():
    t = parse_theory("fact p(1). q(X) <- p(X). assume q(1).")
    gt = ground_theory_full(t)
    assert strs(gt.facts) == {"p(1)"}
    assert strs(gt.strict) == {"q(1) <- p(1)."}


def test_dispatch(running):
    assert ground(running, "naive") == naive_ground_theory(running)
    assert ground(running, Mode.FULL) == ground_theory_full(running)
    assert ground(running, "t2") == ground_theory(running, Mode.T2)


def test_emitted_rules_are_instances():
    for seed in range(40):
        t = corpus_theory(seed)
        sources = list(t.rules)
        for mode in ("t1", "t2", "full"):
            for g in ground(t, mode).rules:
                assert any(
                    type(s) is type(g) and _instance(s, g) for s in sources
                ), (seed, mode, str(g))


def _instance(source, g):
    # match head (and name) first, then search for a consistent body assignment
    sub = {}
    pairs = [(source.head, g.head)]
    if hasattr(source, "name"):
        pairs.append((source.name, g.name))
    for p, q in pairs:
        sub = match(p, q, sub)
        if sub is None:
            return False
    body = sorted(source.body, key=str)
    targets = list(g.body)

    def search(i, sub):
        if i == len(body):
            return {b.substitute(sub) for b in body} == set(targets)
        for q in targets:
            s2 = match(body[i], q, sub)
            if s2 is not None and search(i + 1, s2):
                return True
        return False

    return search(0, sub)
