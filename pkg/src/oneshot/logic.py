"""First-order building blocks: terms, literals, clauses, substitutions.

Conventions used throughout the package:

* variable names match ``[A-Z][A-Za-z0-9_]*``; anything else is a constant
* integer constants fit in signed 64 bits
* string constants render bare when they look like identifiers starting
  with a lowercase letter, quoted otherwise (so a constant never renders
  like a variable)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
BARE_STR_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class LogicError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    kind: str  # "var" | "int" | "str"
    value: object

    def __post_init__(self) -> None:
        if self.kind == "var":
            if not isinstance(self.value, str) or not VAR_RE.match(self.value):
                raise LogicError(f"bad variable name {self.value!r}")
        elif self.kind == "int":
            if not isinstance(self.value, int) or not (INT64_MIN <= self.value <= INT64_MAX):
                raise LogicError(f"integer constant out of 64-bit range: {self.value!r}")
        elif self.kind == "str":
            if not isinstance(self.value, str):
                raise LogicError(f"bad string constant {self.value!r}")
        else:
            raise LogicError(f"unknown term kind {self.kind!r}")

    @property
    def is_var(self) -> bool:
        return self.kind == "var"

    def render(self) -> str:
        if self.kind == "int":
            return str(self.value)
        if self.kind == "var":
            return str(self.value)
        s = str(self.value)
        if BARE_STR_RE.match(s) and not VAR_RE.match(s):
            return s
        return '"' + s.replace('"', '\\"') + '"'

    def sort_key(self) -> tuple:
        # ints compare numerically among themselves, everything else textually
        if self.kind == "int":
            return (self.kind, self.value)
        return (self.kind, str(self.value))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return self.render()


def var(name: str) -> Term:
    return Term("var", name)


def intc(value: int) -> Term:
    return Term("int", value)


def strc(value: str) -> Term:
    return Term("str", value)


@dataclass(frozen=True)
class Literal:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def vars(self) -> tuple[str, ...]:
        seen: list[str] = []
        for a in self.args:
            if a.is_var and a.value not in seen:
                seen.append(str(a.value))
        return tuple(seen)

    def is_ground(self) -> bool:
        return all(not a.is_var for a in self.args)

    def render(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(a.render() for a in self.args)})"

    def sort_key(self) -> tuple:
        return (self.pred, tuple(a.sort_key() for a in self.args))

    def __repr__(self) -> str:  # pragma: no cover
        return self.render()


# ---------------------------------------------------------------------------
# built-in constraint predicates
# ---------------------------------------------------------------------------

# Sub(x, y, n) holds when y - x = n; Greater(x, y) holds when y > x.
BUILTIN_ARITY = {"Equal": 2, "Sub": 3, "Greater": 2, "Geq": 2}


def is_builtin(pred: str) -> bool:
    return pred in BUILTIN_ARITY


def eval_builtin(lit: Literal) -> bool:
    """Evaluate a ground constraint literal.

    Raises LogicError for unknown predicates, wrong arity, unbound
    variables, or non-integer arguments.
    """
    if lit.pred not in BUILTIN_ARITY:
        raise LogicError(f"unknown built-in predicate {lit.pred}")
    if lit.arity != BUILTIN_ARITY[lit.pred]:
        raise LogicError(
            f"{lit.pred} expects {BUILTIN_ARITY[lit.pred]} arguments, got {lit.arity}"
        )
    vals: list[int] = []
    for a in lit.args:
        if a.is_var:
            raise LogicError(f"built-in {lit.render()} has unbound variable {a.render()}")
        if a.kind != "int":
            raise LogicError(f"built-in {lit.render()} has non-integer argument {a.render()}")
        vals.append(int(a.value))  # type: ignore[arg-type]
    if lit.pred == "Equal":
        return vals[0] == vals[1]
    if lit.pred == "Sub":
        return vals[1] - vals[0] == vals[2]
    if lit.pred == "Greater":
        return vals[1] > vals[0]
    return vals[1] >= vals[0]


@dataclass(frozen=True)
class Clause:
    head: Literal
    body: tuple[Literal, ...] = ()

    def vars(self) -> tuple[str, ...]:
        seen: list[str] = []
        for lit in (self.head, *self.body):
            for v in lit.vars():
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def body_vars(self) -> set[str]:
        out: set[str] = set()
        for lit in self.body:
            out.update(lit.vars())
        return out

    def is_range_restricted(self) -> bool:
        if not self.body:
            return not self.head.vars()
        bv = self.body_vars()
        return all(v in bv for v in self.head.vars())

    def fact_literals(self) -> tuple[Literal, ...]:
        return tuple(l for l in self.body if not is_builtin(l.pred))

    def constraint_literals(self) -> tuple[Literal, ...]:
        return tuple(l for l in self.body if is_builtin(l.pred))

    def render(self) -> str:
        if not self.body:
            return f"{self.head.render()}."
        return f"{self.head.render()} :- {', '.join(l.render() for l in self.body)}."

    def sorted_body(self) -> tuple[Literal, ...]:
        return tuple(sorted(self.body, key=lambda l: l.sort_key()))

    def _renamed_sorted(self) -> "Clause":
        body = self.sorted_body()
        mapping: dict[str, Term] = {}
        for lit in (self.head, *body):
            for a in lit.args:
                if a.is_var and a.value not in mapping:
                    mapping[str(a.value)] = var(f"V{len(mapping)}")
        sub = Substitution(mapping)
        return Clause(sub.apply_literal(self.head), tuple(sub.apply_literal(l) for l in body))

    def canonical(self) -> "Clause":
        """Alpha-normalised form: body sorted, variables renamed V0.. in
        first-occurrence order (head first).  Used for deduplication and
        deterministic comparisons.

        Sorting and renaming feed each other, so one pass is not a fixed
        point; iterate until the form repeats and take the smallest form
        of the cycle, which makes the result idempotent."""
        seen: dict[str, int] = {}
        forms: list[Clause] = []
        cur = self._renamed_sorted()
        while cur.render() not in seen:
            seen[cur.render()] = len(forms)
            forms.append(cur)
            cur = cur._renamed_sorted()
        cycle = forms[seen[cur.render()]:]
        return min(cycle, key=lambda c: c.render())

    def __repr__(self) -> str:  # pragma: no cover
        return self.render()


@dataclass(frozen=True)
class Theory:
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if not self.clauses:
            raise LogicError("a theory needs at least one clause")
        h0 = self.clauses[0].head
        for c in self.clauses[1:]:
            if c.head.pred != h0.pred or c.head.arity != h0.arity:
                raise LogicError("clause heads must share predicate and arity")

    @property
    def head_pred(self) -> str:
        return self.clauses[0].head.pred

    def body_size(self) -> int:
        return sum(len(c.body) for c in self.clauses)

    def render(self) -> str:
        return "\n".join(c.render() for c in self.clauses) + "\n"

    def canonical(self) -> "Theory":
        clauses = sorted((c.canonical() for c in self.clauses), key=Clause.render)
        return Theory(tuple(clauses))

    def __repr__(self) -> str:  # pragma: no cover
        return self.render()


def single(clause: Clause) -> Theory:
    return Theory((clause,))


@dataclass
class Substitution:
    """Mapping from variable names to terms.  A variable is bound at most
    once; rebinding with a different value is an error."""

    bindings: dict[str, Term] = field(default_factory=dict)

    def bind(self, name: str, value: Term) -> None:
        old = self.bindings.get(name)
        if old is not None and old != value:
            raise LogicError(f"variable {name} already bound to {old.render()}")
        self.bindings[name] = value

    def get(self, name: str) -> Term | None:
        return self.bindings.get(name)

    def copy(self) -> "Substitution":
        return Substitution(dict(self.bindings))

    def apply_term(self, t: Term) -> Term:
        if t.is_var:
            return self.bindings.get(str(t.value), t)
        return t

    def apply_literal(self, lit: Literal) -> Literal:
        return Literal(lit.pred, tuple(self.apply_term(a) for a in lit.args))

    def apply_clause(self, c: Clause) -> Clause:
        return Clause(self.apply_literal(c.head), tuple(self.apply_literal(l) for l in c.body))

    def int_value(self, name: str) -> int | None:
        t = self.bindings.get(name)
        if t is not None and t.kind == "int":
            return int(t.value)  # type: ignore[arg-type]
        return None


def apply_substitution(theta: Substitution, obj):
    """Total application over terms, literals, clauses and theories."""
    if isinstance(obj, Term):
        return theta.apply_term(obj)
    if isinstance(obj, Literal):
        return theta.apply_literal(obj)
    if isinstance(obj, Clause):
        return theta.apply_clause(obj)
    if isinstance(obj, Theory):
        return Theory(tuple(theta.apply_clause(c) for c in obj.clauses))
    raise LogicError(f"cannot apply substitution to {type(obj).__name__}")


@dataclass(frozen=True)
class GroundExample:
    """A single grounded concept instance: concept head, named integer
    parameters, ground facts and (optionally) a time index per fact."""

    head: Literal
    params: tuple[tuple[str, int], ...] = ()
    facts: tuple[Literal, ...] = ()
    times: tuple[tuple[Literal, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.head.is_ground():
            raise LogicError(f"concept head {self.head.render()} is not ground")
        for f in self.facts:
            if not f.is_ground():
                raise LogicError(f"fact {f.render()} is not ground")
        names = [n for n, _ in self.params]
        if len(names) != len(set(names)):
            raise LogicError("duplicate parameter name")

    @property
    def param_map(self) -> dict[str, int]:
        return dict(self.params)

    @property
    def fact_set(self) -> frozenset[Literal]:
        return frozenset(self.facts)

    def time_map(self) -> dict[Literal, int]:
        return dict(self.times)

    def sorted_facts(self) -> tuple[Literal, ...]:
        return tuple(sorted(self.facts, key=lambda l: l.sort_key()))


def fresh_var_namer(prefix: str = "V"):
    counter = [0]

    def fresh() -> Term:
        t = var(f"{prefix}{counter[0]}")
        counter[0] += 1
        return t

    return fresh


def variablize(
    x: GroundExample, keep_constants: frozenset[str] = frozenset()
) -> tuple[Clause, Substitution]:
    """Inverse-substitution generalization of a ground example.

    Identical ground terms share one variable (term level).  Numeric
    constants always become variables; string constants become variables
    unless listed in ``keep_constants``.  Returns the clause together with
    the inverse substitution (variable -> original ground term), so
    ``apply_substitution(theta, clause)`` reproduces the example exactly.
    """
    fresh = fresh_var_namer()
    to_var: dict[Term, Term] = {}
    inverse = Substitution()

    def lift(t: Term) -> Term:
        if t.is_var:
            raise LogicError("variablize expects ground input")
        if t.kind == "str" and str(t.value) in keep_constants:
            return t
        got = to_var.get(t)
        if got is None:
            got = fresh()
            to_var[t] = got
            inverse.bind(str(got.value), t)
        return got

    def lift_literal(lit: Literal) -> Literal:
        return Literal(lit.pred, tuple(lift(a) for a in lit.args))

    head = lift_literal(x.head)
    body = tuple(lift_literal(f) for f in x.sorted_facts())
    return Clause(head, body), inverse
