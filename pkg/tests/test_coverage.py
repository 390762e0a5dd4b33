"""Theta-subsumption coverage against a brute-force reference.

The reference matcher enumerates every assignment of clause variables to
terms occurring in the example, so it is exponential but obviously
correct; `covers` must agree with it on randomly generated cases.
"""

from __future__ import annotations

import itertools
import random

import pytest

from oneshot.coverage import CoverageBudgetError, covers
from oneshot.logic import (
    Clause,
    GroundExample,
    Literal,
    Theory,
    eval_builtin,
    intc,
    is_builtin,
    single,
    strc,
    var,
)
from oneshot.parsing import parse_clause_line, parse_example, parse_theory


def brute_covers(t: Theory, x: GroundExample) -> bool:
    """Reference matcher: try every assignment of the bindable clause
    variables over the terms of the example.  Only the head and fact
    literals can bind a variable; a built-in over any other variable
    never becomes ground, so it blocks coverage."""
    universe = set()
    for f in (x.head, *x.facts):
        universe.update(f.args)
    universe = sorted(universe, key=lambda a: a.sort_key())
    for clause in t.clauses:
        if clause.head.pred != x.head.pred or clause.head.arity != x.head.arity:
            continue
        bindable = set(clause.head.vars())
        for lit in clause.body:
            if not is_builtin(lit.pred):
                bindable.update(lit.vars())
        names = sorted(bindable)
        for combo in itertools.product(universe, repeat=len(names)):
            env = dict(zip(names, combo))

            def g(term):
                return env.get(str(term.value), term) if term.is_var else term

            if any(g(p) != v for p, v in zip(clause.head.args, x.head.args)):
                continue
            ok = True
            for b in clause.body:
                ground = Literal(b.pred, tuple(g(a) for a in b.args))
                if is_builtin(b.pred):
                    if (
                        any(a.is_var for a in ground.args)
                        or any(a.kind != "int" for a in ground.args)
                        or not eval_builtin(ground)
                    ):
                        ok = False
                        break
                elif ground not in x.fact_set:
                    ok = False
                    break
            if ok:
                return True
    return False


X = parse_example(
    "@concept P(s).\n"
    "Contains(s, a).\n"
    "Contains(s, b).\n"
    "Row(a).\n"
    "Tower(b).\n"
    "Width(a, 4).\n"
    "Height(b, 5).\n"
)


def c(line: str) -> Theory:
    return single(parse_clause_line(line))


def test_covers_simple_positive():
    r = covers(c("P(S) :- Contains(S, C), Row(C)."), X)
    assert r.covered
    assert r.witness.get("C").render() == "a"


def test_covers_simple_negative():
    assert not covers(c("P(S) :- Row(S)."), X).covered


def test_head_predicate_must_match():
    assert not covers(c("Q(S) :- Contains(S, C)."), X).covered


def test_head_constant_must_match():
    assert covers(c("P(s) :- Row(C)."), X).covered
    assert not covers(c("P(z) :- Row(C)."), X).covered


def test_same_fact_may_match_two_literals():
    assert covers(c("P(S) :- Contains(S, C), Contains(S, D)."), X).covered


def test_builtin_evaluated_on_witness():
    assert covers(c("P(S) :- Width(C, W), Height(D, H), Sub(W, H, 1)."), X).covered
    assert not covers(c("P(S) :- Width(C, W), Height(D, H), Sub(H, W, 1)."), X).covered
    assert covers(c("P(S) :- Width(C, W), Height(D, H), Greater(W, H)."), X).covered
    assert not covers(c("P(S) :- Width(C, W), Greater(W, W)."), X).covered


def test_unbound_builtin_variable_blocks_coverage():
    # N never appears in a fact literal, so the built-in stays open
    assert not covers(c("P(S) :- Row(C), Equal(N, N)."), X).covered


def test_non_integer_builtin_binding_is_false_not_an_error():
    # C binds to an object name, which no numeric constraint accepts
    assert not covers(c("P(S) :- Row(C), Geq(C, C)."), X).covered


def test_malformed_builtin_arity_raises():
    from oneshot.logic import LogicError

    with pytest.raises(LogicError):
        covers(c("P(S) :- Row(C), Equal(C)."), X)


def test_theory_covers_when_any_clause_does():
    t = parse_theory("P(S) :- Row(S).\nP(S) :- Tower(C).\n")
    r = covers(t, X)
    assert r.covered


def test_witness_comes_from_first_covering_clause():
    t = parse_theory("P(S) :- Tower(C).\nP(S) :- Row(C).\n")
    assert covers(t, X).witness.get("C").render() == "b"


def test_budget_raises():
    # even the straight-line success path needs one binding per literal
    body = ", ".join(f"Contains(S, C{i})" for i in range(8))
    with pytest.raises(CoverageBudgetError):
        covers(c(f"P(S) :- {body}."), X, budget=3)


def test_empty_body_covers_iff_head_unifies():
    assert covers(c("P(s)."), X).covered
    assert not covers(c("P(q)."), X).covered


PREDS = [("Contains", 2), ("Row", 1), ("Tower", 1), ("Width", 2), ("Height", 2)]
BUILTINS = [("Equal", 2), ("Greater", 2), ("Geq", 2), ("Sub", 3)]


def random_case(rng: random.Random):
    objs = [strc(n) for n in ("s", "a", "b", "c")][: rng.randint(2, 4)]
    ints = [intc(v) for v in range(1, 1 + rng.randint(1, 3))]
    pool = objs + ints
    facts = set()
    for _ in range(rng.randint(1, 7)):
        pred, arity = rng.choice(PREDS)
        facts.add(Literal(pred, tuple(rng.choice(pool) for _ in range(arity))))
    x = GroundExample(
        Literal("P", (objs[0],)),
        facts=tuple(sorted(facts, key=lambda f: f.sort_key())),
    )

    names = ["S", "A", "B", "N"][: rng.randint(1, 4)]
    body = []
    for _ in range(rng.randint(0, 4)):
        pred, arity = rng.choice(PREDS)
        body.append(Literal(pred, tuple(var(rng.choice(names)) for _ in range(arity))))
    for _ in range(rng.randint(0, 2)):
        pred, arity = rng.choice(BUILTINS)
        args = [var(rng.choice(names)) for _ in range(arity)]
        if pred == "Sub":
            args[2] = intc(rng.randint(-2, 2))
        body.append(Literal(pred, tuple(args)))
    clause = Clause(Literal("P", (var("S"),)), tuple(body))
    return single(clause), x


def test_covers_agrees_with_brute_force_on_random_cases():
    rng = random.Random(414243)
    checked = 0
    for _ in range(300):
        t, x = random_case(rng)
        assert covers(t, x).covered == brute_covers(t, x), (t.render(), x.facts)
        checked += 1
    assert checked == 300
