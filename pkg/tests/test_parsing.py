"""Surface syntax: examples, theories, domains, constraint libraries.

Checks round-trips, error positions, comment handling (a # only opens a
comment at line start or when surrounded by whitespace, so #-prefixed
mode marks survive), and the shape of parsed domain declarations.
"""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oneshot.logic import Literal, intc, strc
from oneshot.parsing import (
    ParseError,
    parse_clause_line,
    parse_constraints,
    parse_domain,
    parse_example,
    parse_theory,
    render_example,
)
from oneshot.plans import ActionTemplate, CompositeRef
import oneshot.worlds as worlds


def test_parse_example_basic():
    x = parse_example(
        "# a tiny example\n"
        "@concept P(s).\n"
        "@params s: base=4, height=5.\n"
        "Contains(s, a).\n"
        'SpRel(b, a, "NWTop").\n'
    )
    assert x.head.render() == "P(s)"
    assert x.param_map == {"base": 4, "height": 5}
    assert Literal("SpRel", (strc("b"), strc("a"), strc("NWTop"))) in x.fact_set


def test_parse_example_time_prefix():
    x = parse_example(
        "@concept Build(s).\n"
        "@time 2: Join(w, f).\n"
        "@time 1: Fetch(c, w).\n"
        "Frame(f).\n"
    )
    tm = x.time_map()
    assert tm[Literal("Fetch", (strc("c"), strc("w")))] == 1
    assert tm[Literal("Join", (strc("w"), strc("f")))] == 2
    assert Literal("Frame", (strc("f"),)) in x.fact_set


def test_parse_example_round_trip():
    x = parse_example(worlds.L_SHAPE_FACTS)
    again = parse_example(render_example(x))
    assert again.head == x.head
    assert again.fact_set == x.fact_set
    assert again.param_map == x.param_map


@pytest.mark.parametrize(
    "text,fragment,line",
    [
        ("Contains(s, a).\n", "@concept", 1),
        ("@concept P(s).\n@concept Q(s).\n", "duplicate", 2),
        ("@concept P(s).\n@params t: k=1.\n", "params", 2),
        ("@concept P(s).\nContains(s, X).\n", "variable", 2),
        ("@concept P(s).\nContains(s a).\n", "", 2),
    ],
)
def test_parse_example_errors_carry_positions(text, fragment, line):
    with pytest.raises(ParseError) as err:
        parse_example(text)
    assert err.value.line == line
    assert fragment.lower() in str(err.value).lower()


def test_parse_error_column_points_at_token():
    with pytest.raises(ParseError) as err:
        parse_example("@concept P(s).\nContains(s, 4x).\n")
    assert err.value.line == 2
    assert err.value.col > 1


def test_duplicate_facts_are_deduped():
    x = parse_example("@concept P(s).\nRow(a).\nRow(a).\n")
    assert len(x.facts) == 1


def test_parse_clause_line_round_trip():
    line = 'L(V0) :- Contains(V0,V1), SpRel(V1,V1,"NWTop"), Sub(V2,V3,1).'
    c = parse_clause_line(line)
    assert c.render() == line


def test_parse_theory_multiple_clauses(truth):
    rendered = truth.render()
    assert parse_theory(rendered).render() == rendered
    assert len(truth.clauses) == 2


def test_parse_domain_blocks():
    d = parse_domain(worlds.BLOCKS_DOMAIN)
    assert "NWTop" in d.keep_constants and "E" in d.keep_constants
    m = d.modes["Contains"]
    assert [s for s in m.slots] == [("+", "obj"), ("-", "obj")]
    assert d.modes["SpRel"].slots[2] == ("#", "dir")
    assert (d.depth_bound, d.arity_bound, d.max_body) == (3, 3, 20)


def test_parse_domain_expansions():
    d = parse_domain(worlds.BLOCKS_DOMAIN)
    by_pred = {r.pred: r for r in d.rules}
    tower = by_pred["Tower"]
    stack = tower.items[0]
    assert isinstance(stack, ActionTemplate)
    assert stack.name == "stack"
    assert stack.loop is not None
    contains = by_pred["Contains"]
    assert any(isinstance(i, ActionTemplate) and i.name == "adopt" for i in contains.items)


def test_parse_domain_composite_refs():
    text = (
        "mode: Wing(+obj).\n"
        "mode: Body(+obj).\n"
        "expand: Wing(W) -> Body(W); rivet(W, 0, 0)\n"
    )
    d = parse_domain(text)
    items = d.rules[0].items
    assert isinstance(items[0], CompositeRef) and items[0].pred == "Body"
    assert isinstance(items[1], ActionTemplate)


def test_parse_domain_errors():
    with pytest.raises(ParseError, match="duplicate"):
        parse_domain("mode: Row(+obj).\nmode: Row(+obj).\n")
    with pytest.raises(ParseError, match="bound"):
        parse_domain("bounds: q 4.\n")


def test_hash_marks_in_modes_are_not_comments():
    # the # constant mark sits against its type name and must survive
    d = parse_domain("mode: SpRel(+obj, +obj, #dir).\n# trailing comment line\n")
    assert d.modes["SpRel"].slots[2] == ("#", "dir")


def test_hash_surrounded_by_whitespace_is_a_comment():
    x = parse_example("@concept P(s). # head comment\nRow(a). # tail\n")
    assert len(x.facts) == 1


def test_parse_constraints_templates():
    lib = parse_constraints(worlds.STD_CONSTRAINTS)
    sub = lib.template("Sub")
    assert sub is not None
    assert sub.arg_types == ("int", "int", "int")
    assert sub.arg_names == ("x", "y", "n")
    assert "y - x = n" in sub.semantics
    assert lib.template("Equal").arg_types == ("int", "int")
    assert lib.template("Nope") is None


def test_constraint_gloss_substitutes_arguments():
    lib = parse_constraints(worlds.STD_CONSTRAINTS)
    gloss = lib.template("Sub").gloss(("4", "5", "1"))
    assert "5 - 4 = 1" in gloss


def test_unknown_constraint_predicate_rejected():
    with pytest.raises(ParseError):
        parse_constraints("constraint: Wat(x:int) means x.\n")


ints = st.integers(-999, 999)
objs = st.sampled_from(["a", "b", "c1", "s"])
preds = st.sampled_from(["Row", "Width", "SpRel", "Contains"])


@given(st.lists(st.tuples(preds, st.lists(st.one_of(objs, ints), min_size=1, max_size=3)), min_size=1, max_size=8))
def test_random_examples_round_trip(fact_spec):
    facts = []
    for pred, args in fact_spec:
        terms = tuple(intc(a) if isinstance(a, int) else strc(a) for a in args)
        facts.append(Literal(pred, terms).render() + ".")
    text = "@concept P(s).\n" + "\n".join(facts) + "\n"
    x = parse_example(text)
    assert parse_example(render_example(x)).fact_set == x.fact_set
