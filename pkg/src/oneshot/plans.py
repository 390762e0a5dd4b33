"""Decomposition of grounded theories into canonical plan strings.

A domain file declares expansion rules.  Each rule turns one composite
fact (a unary structural predicate such as ``Tower(b)``) into primitive
actions, pulling sizes from attribute facts named in its ``where`` part:

    expand: Tower(B) where Height(B,H) -> place(B,0,k) for k in 0..H-1

Plans are deterministic byte strings: one lowercase action per line,
ordered by time index when the example carries one, otherwise sorted
lexicographically by (action name, argument tuple).
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import (
    Clause,
    GroundExample,
    Literal,
    LogicError,
    Substitution,
    Term,
    Theory,
    eval_builtin,
    intc,
    is_builtin,
    strc,
)


class ExpansionError(ValueError):
    pass


class GroundingError(ValueError):
    pass


@dataclass(frozen=True)
class Affine:
    """Integer-affine expression ``coef * ref + off`` (ref may be absent)."""

    coef: int = 0
    ref: str | None = None
    off: int = 0

    def eval(self, env: dict[str, object]):
        if self.ref is None:
            return self.off
        val = env.get(self.ref)
        if val is None:
            raise ExpansionError(f"unbound name {self.ref!r} in expansion expression")
        if isinstance(val, Term):
            if val.kind == "int":
                val = int(val.value)  # type: ignore[arg-type]
            elif self.coef == 1 and self.off == 0:
                return val  # plain reference to an object/string binding
            else:
                raise ExpansionError(f"arithmetic on non-integer binding {self.ref!r}")
        return self.coef * val + self.off

    def render(self) -> str:
        if self.ref is None:
            return str(self.off)
        s = self.ref if self.coef == 1 else f"{self.coef}*{self.ref}"
        if self.off > 0:
            return f"{s}+{self.off}"
        if self.off < 0:
            return f"{s}{self.off}"
        return s


@dataclass(frozen=True)
class ActionTemplate:
    name: str  # lowercase action name
    args: tuple[Affine, ...] = ()
    # optional iteration: (loop variable, lo, hi) -- hi inclusive
    loop: tuple[str, Affine, Affine] | None = None


@dataclass(frozen=True)
class CompositeRef:
    """Body item that expands another composite in place."""

    pred: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExpansionRule:
    pred: str
    head_vars: tuple[str, ...]
    where: tuple[Literal, ...] = ()
    items: tuple[ActionTemplate | CompositeRef, ...] = ()


def rule_index(rules: tuple[ExpansionRule, ...] | list[ExpansionRule]) -> dict[str, ExpansionRule]:
    out: dict[str, ExpansionRule] = {}
    for r in rules:
        if r.pred in out:
            raise ExpansionError(f"duplicate expansion rule for {r.pred}")
        out[r.pred] = r
    _check_acyclic(out)
    return out


def _check_acyclic(index: dict[str, ExpansionRule]) -> None:
    seen: dict[str, int] = {}  # 0 visiting, 1 done

    def visit(pred: str, trail: list[str]) -> None:
        state = seen.get(pred)
        if state == 1:
            return
        if state == 0:
            raise ExpansionError("cyclic expansion rules: " + " -> ".join(trail + [pred]))
        seen[pred] = 0
        rule = index.get(pred)
        if rule is not None:
            for item in rule.items:
                if isinstance(item, CompositeRef):
                    visit(item.pred, trail + [pred])
        seen[pred] = 1

    for p in index:
        visit(p, [])


def composite_shaped(lit: Literal) -> bool:
    """Unary predicates over a non-numeric argument look like composites;
    everything wider is an attribute or connector."""
    return lit.arity == 1 and lit.args[0].kind != "int"


def check_decomposable(t: Theory, rules) -> tuple[bool, list[str]]:
    """Every body literal must be a composite with an expansion rule, an
    attribute/connector literal, or a built-in.  Returns (ok, diagnosis),
    the diagnosis naming each offending predicate."""
    index = rules if isinstance(rules, dict) else rule_index(rules)
    missing: list[str] = []
    for c in t.clauses:
        for lit in c.body:
            if is_builtin(lit.pred):
                continue
            if composite_shaped(lit) and lit.pred not in index:
                name = f"{lit.pred}/{lit.arity}"
                if name not in missing:
                    missing.append(name)
    return (not missing, missing)


# ---------------------------------------------------------------------------
# grounding
# ---------------------------------------------------------------------------


def _anchor_params(clause: Clause, x: GroundExample, theta: Substitution) -> None:
    """Bind each declared parameter through its attribute literal
    ``P(instance, V)`` where P matches the parameter name case-insensitively.
    A theory that lost a parameter anchor cannot be grounded."""
    head_image = {theta.apply_term(a) for a in clause.head.args}
    for name, value in x.params:
        anchored = False
        for lit in clause.body:
            if lit.pred.lower() != name.lower() or lit.arity != 2:
                continue
            if theta.apply_term(lit.args[0]) not in head_image:
                continue
            slot = theta.apply_term(lit.args[1])
            if slot.is_var:
                theta.bind(str(slot.value), intc(value))
                anchored = True
            elif slot.kind == "int" and int(slot.value) == value:  # type: ignore[arg-type]
                anchored = True
            else:
                raise GroundingError(
                    f"parameter {name}={value} conflicts with {lit.render()}"
                )
        if not anchored:
            raise GroundingError(f"parameter {name!r} has no anchoring literal")


def _propagate(clause: Clause, theta: Substitution) -> None:
    """One-pass-to-fixpoint single-variable propagation over built-ins.
    Equal and Sub can solve for one unbound argument; order predicates
    only check."""
    changed = True
    while changed:
        changed = False
        for lit in clause.constraint_literals():
            args = [theta.apply_term(a) for a in lit.args]
            unbound = [i for i, a in enumerate(args) if a.is_var]
            if not unbound:
                if not eval_builtin(Literal(lit.pred, tuple(args))):
                    raise GroundingError(f"constraint {lit.render()} is unsatisfiable")
                continue
            if len(unbound) > 1:
                continue
            i = unbound[0]
            vals = [int(a.value) if a.kind == "int" else None for a in args]  # type: ignore[arg-type]
            solved: int | None = None
            if lit.pred == "Equal":
                solved = vals[1 - i]
            elif lit.pred == "Sub":
                # Sub(x, y, n) <=> y - x = n
                if i == 0 and vals[1] is not None and vals[2] is not None:
                    solved = vals[1] - vals[2]
                elif i == 1 and vals[0] is not None and vals[2] is not None:
                    solved = vals[0] + vals[2]
                elif i == 2 and vals[0] is not None and vals[1] is not None:
                    solved = vals[1] - vals[0]
            if solved is not None:
                theta.bind(str(args[i].value), intc(solved))
                changed = True


def ground_theory(t: Theory, x: GroundExample, coverage_budget: int = 10**6) -> tuple[Literal, ...]:
    """Instantiate the best-matching clause of ``t`` against ``x``.

    When the example has facts, the coverage witness supplies the bindings
    (so object names line up with the instance); parameter anchoring and
    built-in propagation fill in the rest, e.g. ``Sub(Hb,5,1)`` forces
    ``Hb = 4``.  Leftover object variables get fresh ``o1, o2, ...`` names.
    Raises GroundingError when no clause can be grounded.
    """
    from .coverage import covers

    reasons: list[str] = []
    for clause in t.clauses:
        theta = Substitution()
        try:
            if x.facts:
                res = covers(Theory((clause,)), x, budget=coverage_budget)
                if not res.covered or res.witness is None:
                    raise GroundingError("clause does not cover the example")
                theta = res.witness.copy()
            else:
                if clause.head.pred != x.head.pred or clause.head.arity != x.head.arity:
                    raise GroundingError("head predicate mismatch")
                for hv, ha in zip(clause.head.args, x.head.args):
                    if hv.is_var:
                        theta.bind(str(hv.value), ha)
                    elif hv != ha:
                        raise GroundingError("head constant mismatch")
            _anchor_params(clause, x, theta)
            _propagate(clause, theta)

            skolem = 0
            ground_body: list[Literal] = []
            for lit in clause.body:
                if is_builtin(lit.pred):
                    continue
                args = []
                for a in lit.args:
                    a = theta.apply_term(a)
                    if a.is_var:
                        skolem += 1
                        fresh = strc(f"o{skolem}")
                        theta.bind(str(a.value), fresh)
                        a = fresh
                    args.append(a)
                ground_body.append(Literal(lit.pred, tuple(args)))
            for lit in clause.constraint_literals():
                glit = theta.apply_literal(lit)
                if not glit.is_ground():
                    raise GroundingError(
                        f"unbound variable in {lit.render()} after propagation"
                    )
                if not eval_builtin(glit):
                    raise GroundingError(f"constraint {glit.render()} is unsatisfiable")
                ground_body.append(glit)
            return tuple(ground_body)
        except (GroundingError, LogicError) as e:
            reasons.append(f"{clause.head.render()}: {e}")
    raise GroundingError("no clause could be grounded: " + "; ".join(reasons))


# ---------------------------------------------------------------------------
# plan derivation
# ---------------------------------------------------------------------------

_MAX_EXPANSION_DEPTH = 32


def _match_where(lit: Literal, facts: tuple[Literal, ...], env: dict[str, object]) -> None:
    for f in sorted(facts, key=lambda l: l.sort_key()):
        if f.pred != lit.pred or f.arity != lit.arity:
            continue
        trial = dict(env)
        ok = True
        for pat, val in zip(lit.args, f.args):
            if pat.is_var:
                name = str(pat.value)
                bound = trial.get(name)
                if bound is None:
                    trial[name] = val
                elif bound != val:
                    ok = False
                    break
            elif pat != val:
                ok = False
                break
        if ok:
            env.update(trial)
            return
    raise ExpansionError(f"no {lit.render()} fact matches the where clause")


def _expand_fact(
    fact: Literal,
    rule: ExpansionRule,
    facts: tuple[Literal, ...],
    index: dict[str, ExpansionRule],
    out: list[tuple],
    depth: int,
) -> None:
    if depth > _MAX_EXPANSION_DEPTH:
        raise ExpansionError("expansion nesting too deep")
    if len(rule.head_vars) != fact.arity:
        raise ExpansionError(f"rule for {rule.pred} does not fit {fact.render()}")
    env: dict[str, object] = dict(zip(rule.head_vars, fact.args))
    for w in rule.where:
        _match_where(w, facts, env)
    for item in rule.items:
        if isinstance(item, CompositeRef):
            args = []
            for name in item.args:
                val = env.get(name)
                if not isinstance(val, Term):
                    raise ExpansionError(f"composite argument {name!r} is not an object")
                args.append(val)
            sub_rule = index.get(item.pred)
            if sub_rule is None:
                raise ExpansionError(f"no expansion rule for composite {item.pred}")
            _expand_fact(Literal(item.pred, tuple(args)), sub_rule, facts, index, out, depth + 1)
            continue
        if item.loop is None:
            out.append((item.name, tuple(a.eval(env) for a in item.args)))
        else:
            lv, lo, hi = item.loop
            lo_v, hi_v = lo.eval(env), hi.eval(env)
            if not isinstance(lo_v, int) or not isinstance(hi_v, int):
                raise ExpansionError("loop bounds must be integers")
            for k in range(lo_v, hi_v + 1):
                it_env = dict(env)
                it_env[lv] = k
                out.append((item.name, tuple(a.eval(it_env) for a in item.args)))


def _render_action(action: tuple) -> str:
    name, args = action
    parts = []
    for a in args:
        parts.append(a.render() if isinstance(a, Term) else str(a))
    return f"{name}({','.join(parts)})" if parts else name


def _action_key(action: tuple) -> tuple:
    name, args = action
    key = [(a.sort_key() if isinstance(a, Term) else ("int", a)) for a in args]
    return (name, key)


def derive_plan(
    facts: tuple[Literal, ...],
    rules,
    times: dict[Literal, int] | None = None,
) -> bytes:
    """Serialize a ground fact set into its canonical plan string.

    With time indices the indexed facts are the action sequence, ordered
    by index (ties lexicographic); unindexed facts are state context and
    contribute nothing.  Otherwise every fact whose predicate has an
    expansion rule is expanded recursively and the primitive actions are
    sorted.  Identical fact sets always produce byte-identical plans.
    """
    index = rules if isinstance(rules, dict) else rule_index(rules)
    if times:
        lines = []
        for lit, t in sorted(times.items(), key=lambda kv: (kv[1], kv[0].sort_key())):
            args = ",".join(a.render() for a in lit.args)
            lines.append(f"{lit.pred.lower()}({args})" if args else lit.pred.lower())
        return ("\n".join(lines) + "\n").encode() if lines else b""

    actions: list[tuple] = []
    for fact in sorted(set(facts), key=lambda l: l.sort_key()):
        if is_builtin(fact.pred):
            continue
        rule = index.get(fact.pred)
        if rule is not None:
            _expand_fact(fact, rule, tuple(facts), index, actions, 0)
    actions.sort(key=_action_key)
    if not actions:
        return b""
    return ("\n".join(_render_action(a) for a in actions) + "\n").encode()


def example_plan(x: GroundExample, rules) -> bytes:
    times = x.time_map()
    return derive_plan(x.facts, rules, times if times else None)
