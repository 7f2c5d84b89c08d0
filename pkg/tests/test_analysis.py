import itertools

from aspicground.analysis import (
    approximated_predicates,
    non_approximated_predicates,
    pred_dependencies,
    rule_dependencies,
    rule_scc_order,
)
from aspicground.generator import GenConfig, generate
from aspicground.syntax import parse_theory


def test_running_edges(running):
    g = pred_dependencies(running)
    assert ("c", "e") in g.pos_edges
    assert ("e", "c") in g.neg_edges
    assert ("b", "a") in g.neg_edges
    assert ("f", "b") in g.pos_edges


def test_no_defeasible_elements_no_negative_edges():
    g = pred_dependencies(parse_theory("contrary p(X): q(X). p(X) <- q(X). fact q(1)."))
    assert g.neg_edges == frozenset()


def test_isolated_predicate_has_no_incoming_edges(running):
    g = pred_dependencies(running)
    assert not any(b == "f" for _, b in g.pos_edges | g.neg_edges)


def test_running_approximated(running):
    assert approximated_predicates(running) == {"c", "e"}
    assert non_approximated_predicates(running) == {"a", "b", "d", "f", "n_d"}


def test_negation_free_theory():
    t = parse_theory("p(X) <- q(X). q(X) <- p(X). fact q(1).")
    assert approximated_predicates(t) == frozenset()


def test_self_negative_loop_counts_as_cycle():
    t = parse_theory("contrary p(X): p(X). assume p(1).")
    assert approximated_predicates(t) == {"p"}


def test_dot_output(running):
    dot = pred_dependencies(running).to_dot()
    assert dot.startswith("digraph deps {")
    assert '"c" -> "e";' in dot
    assert '"e" -> "c" [style=dashed];' in dot


def test_running_rule_order(running):
    order = [str(next(iter(c))) for c in rule_scc_order(running)]
    assert all(len(c) == 1 for c in rule_scc_order(running))
    assert order.index("n_d(X): c(X) <= a(X).") < order.index("e(X) <- c(X).")
    deps = rule_dependencies(running)
    b_rule = next(r for r in running.strict if r.head.predicate == "b")
    assert deps[b_rule] == set()
    assert not any(b_rule in v for v in deps.values())


def test_two_cycle_single_component():
    order = rule_scc_order(parse_theory("p(X) <- q(X). q(X) <- p(X)."))
    assert len(order) == 1 and len(order.components[0]) == 2


def test_empty_rules():
    assert len(rule_scc_order(parse_theory("fact a."))) == 0


# brute-force closure oracle

def _reach(nodes, edges):
    r = {(a, b) for a, b in edges} | {(n, n) for n in nodes}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(r), list(r)):
            if b == c and (a, d) not in r:
                r.add((a, d))
                changed = True
    return r


def _violates(nodes, pos, neg, s, reach):
    on_neg_cycle = {p for p in nodes for a, b in neg if (b, p) in reach and (p, a) in reach}
    if not on_neg_cycle <= s:
        return True
    return any(a in s and b not in s for a, b in pos | neg)


def _oracle(nodes, pos, neg):
    reach = _reach(nodes, pos | neg)
    s = {p for p in nodes for a, b in neg if (b, p) in reach and (p, a) in reach}
    changed = True
    while changed:
        changed = False
        for a, b in pos | neg:
            if a in s and b not in s:
                s.add(b)
                changed = True
    return s, reach


def small_theories(n=60):
    for seed in range(n):
        cfg = GenConfig(
            seed=seed,
            n_strict=3,
            n_defeasible=3,
            n_contraries=3,
            n_atoms_in_kb=4,
            preds_per_arity=2,
            arity_dist=((1, 0.7), (2, 0.3)),
            body_len_dist=((1, 0.6), (2, 0.4)),
            constant_range=(0, 3),
        )
        yield generate(cfg)


def test_approximation_is_least_closed_set():
    for t in small_theories():
        g = pred_dependencies(t)
        assert len(g.nodes) <= 12
        expected, reach = _oracle(g.nodes, g.pos_edges, g.neg_edges)
        got = approximated_predicates(t)
        assert got == expected
        assert not _violates(g.nodes, g.pos_edges, g.neg_edges, set(got), reach)
        for p in got:
            assert _violates(g.nodes, g.pos_edges, g.neg_edges, set(got) - {p}, reach)
        assert got | non_approximated_predicates(t) == t.predicates()
        assert not got & non_approximated_predicates(t)


def test_name_aware_analysis_is_a_superset():
    for t in small_theories():
        assert approximated_predicates(t) <= approximated_predicates(t, include_names=True)


def test_scc_order_respects_rule_edges():
    for t in small_theories():
        order = rule_scc_order(t)
        pos = {r: i for i, c in enumerate(order) for r in c}
        assert set(pos) == set(t.rules)
        for r, succs in rule_dependencies(t).items():
            for s in succs:
                assert pos[r] <= pos[s]
