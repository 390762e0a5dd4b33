"""Constraint solicitation: enumerate candidate constraint literals over
the numeric variables of a hypothesis, rank them, pose a preference
query to a teacher, and conjoin the chosen constraint.

Candidates are grounded through the coverage witness of the training
example, so only constraints that actually hold on the instance are ever
offered.  Each candidate is offered at most once per session.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .coverage import covers
from .domain import SPECIFICITY, ConstraintLibrary, ConstraintTemplate
from .logic import (
    Clause,
    GroundExample,
    Literal,
    Term,
    Theory,
    intc,
    is_builtin,
    single,
    var,
)


@dataclass(frozen=True)
class Candidate:
    """One offered constraint: the literal over hypothesis variables, its
    grounding under the coverage witness, and a readable gloss."""

    literal: Literal
    ground: Literal
    gloss: str

    def render(self) -> str:
        return f"{self.literal.render()}  [{self.gloss}]"


@dataclass(frozen=True)
class AdviceQuery:
    iteration: int
    candidates: tuple[Candidate, ...]


@dataclass(frozen=True)
class AdvicePreference:
    """Teacher response: index into the query's candidate list, or None
    when no offered constraint is wanted."""

    chosen: int | None

    def pick(self, query: AdviceQuery) -> Candidate | None:
        if self.chosen is None:
            return None
        if not 0 <= self.chosen < len(query.candidates):
            raise ValueError(f"preference index {self.chosen} out of range")
        return query.candidates[self.chosen]


class Teacher(Protocol):
    def start_session(self, x: GroundExample) -> None: ...

    def answer(self, query: AdviceQuery) -> AdvicePreference: ...


def _rank_key(c: Candidate) -> tuple[int, str]:
    return (SPECIFICITY.get(c.literal.pred, len(SPECIFICITY)), c.literal.render())


def _numeric_witness(
    clause: Clause, x: GroundExample, budget: int
) -> dict[str, int] | None:
    """Variables of the clause bound to ints by a coverage witness."""
    got = covers(single(clause), x, budget=budget)
    if not got.covered or got.witness is None:
        return None
    out: dict[str, int] = {}
    for name in sorted(clause.vars()):
        val = got.witness.int_value(name)
        if val is not None:
            out[name] = val
    return out


def _gloss(template: ConstraintTemplate | None, lit: Literal, vals: tuple[int, ...]) -> str:
    if template is None:
        return lit.render()
    sym = template.gloss(tuple(a.render() for a in lit.args))
    num = template.gloss(tuple(str(v) for v in vals))
    return f"{sym} (here {num})"


def enumerate_candidates(
    t: Theory,
    x: GroundExample,
    library: ConstraintLibrary,
    budget: int = 1_000_000,
) -> list[Candidate]:
    """All true constraint candidates over numeric variable pairs of the
    first clause of ``t`` that covers ``x``, most specific first."""
    out: list[Candidate] = []
    for clause in t.clauses:
        values = _numeric_witness(clause, x, budget)
        if values is None:
            continue
        present = set(clause.body)
        nvars = sorted(values)
        for i, a in enumerate(nvars):
            for b in nvars[i + 1 :]:
                va, vb = values[a], values[b]
                out.extend(_pair_candidates(var(a), var(b), va, vb, library, present))
        break
    uniq: dict[str, Candidate] = {}
    for c in out:
        uniq.setdefault(c.literal.render(), c)
    return sorted(uniq.values(), key=_rank_key)


def _pair_candidates(
    a: Term,
    b: Term,
    va: int,
    vb: int,
    library: ConstraintLibrary,
    present: set[Literal],
) -> list[Candidate]:
    """True constraints for one unordered variable pair.  Equal uses the
    lexicographic orientation; Sub only offers positive offsets."""
    found: list[tuple[Literal, tuple[int, ...]]] = []
    if library.has("Equal") and va == vb:
        found.append((Literal("Equal", (a, b)), (va, vb)))
    if library.has("Sub"):
        if vb - va >= 1:
            found.append((Literal("Sub", (a, b, intc(vb - va))), (va, vb, vb - va)))
        elif va - vb >= 1:
            found.append((Literal("Sub", (b, a, intc(va - vb))), (vb, va, va - vb)))
    if library.has("Greater"):
        if vb > va:
            found.append((Literal("Greater", (a, b)), (va, vb)))
        elif va > vb:
            found.append((Literal("Greater", (b, a)), (vb, va)))
    if library.has("Geq"):
        # when the values are equal only the lexicographic orientation is offered
        if vb >= va:
            found.append((Literal("Geq", (a, b)), (va, vb)))
        if va > vb:
            found.append((Literal("Geq", (b, a)), (vb, va)))
    out = []
    for lit, vals in found:
        if lit in present:
            continue
        out.append(Candidate(lit, _ground(lit, vals), _gloss(library.template(lit.pred), lit, vals)))
    return out


def _ground(lit: Literal, vals: tuple[int, ...]) -> Literal:
    return Literal(lit.pred, tuple(intc(v) for v in vals))


@dataclass
class AdviceEngine:
    """Session state for query posing: top-k cut and once-per-session
    deduplication of offered candidates."""

    library: ConstraintLibrary
    k: int = 5
    asked: set[str] = field(default_factory=set)
    preferred: set[Literal] = field(default_factory=set)

    def next_query(
        self, t: Theory, x: GroundExample, iteration: int, budget: int = 1_000_000
    ) -> AdviceQuery | None:
        fresh = [
            c
            for c in enumerate_candidates(t, x, self.library, budget)
            if c.literal.render() not in self.asked
        ]
        if not fresh:
            return None
        cut = fresh[: self.k]
        for c in cut:
            self.asked.add(c.literal.render())
        return AdviceQuery(iteration, tuple(cut))

    def accept(self, choice: Candidate | None) -> tuple[Literal, ...]:
        if choice is None:
            return ()
        self.preferred.add(choice.literal)
        return (choice.literal,)


def apply_advice(t: Theory, constraints: tuple[Literal, ...], max_body: int = 20) -> Theory:
    """Conjoin preferred constraints into the first clause.  Idempotent;
    constraints that would blow the body bound are skipped."""
    if not constraints:
        return t
    clause = t.clauses[0]
    body = list(clause.body)
    for lit in constraints:
        if not is_builtin(lit.pred):
            raise ValueError(f"advice literal {lit.render()} is not a constraint")
        if lit in body:
            continue
        if len(body) >= max_body:
            continue
        body.append(lit)
    new = Clause(clause.head, tuple(body))
    return Theory((new,) + t.clauses[1:])


class ScriptedOracle:
    """Teacher that answers from a hidden target theory.  A candidate is
    preferred when its grounding appears in the target clause's ground
    constraint image on the session example."""

    def __init__(self, truth: Theory, budget: int = 1_000_000):
        self.truth = truth
        self.budget = budget
        self._image: set[str] = set()

    def start_session(self, x: GroundExample) -> None:
        self._image = set()
        for clause in self.truth.clauses:
            got = covers(single(clause), x, budget=self.budget)
            if not got.covered or got.witness is None:
                continue
            for lit in clause.constraint_literals():
                g = got.witness.apply_literal(lit)
                if g.is_ground():
                    self._image.add(g.render())
            break

    def answer(self, query: AdviceQuery) -> AdvicePreference:
        for idx, cand in enumerate(query.candidates):
            if cand.ground.render() in self._image:
                return AdvicePreference(idx)
        return AdvicePreference(None)


class ReplayTeacher:
    """Answers from a recorded list of preferences, for log replay."""

    def __init__(self, choices: list[int | None]):
        self.choices = list(choices)
        self.pos = 0

    def start_session(self, x: GroundExample) -> None:
        self.pos = 0

    def answer(self, query: AdviceQuery) -> AdvicePreference:
        if self.pos >= len(self.choices):
            return AdvicePreference(None)
        c = self.choices[self.pos]
        self.pos += 1
        return AdvicePreference(c)


class SilentTeacher:
    """Declines every query; used by arms that run without guidance."""

    def start_session(self, x: GroundExample) -> None:
        pass

    def answer(self, query: AdviceQuery) -> AdvicePreference:
        return AdvicePreference(None)


class TerminalTeacher:
    """Interactive prompt on stdin, used by the induce command."""

    def start_session(self, x: GroundExample) -> None:
        print(f"session on {x.head.render()}")

    def answer(self, query: AdviceQuery) -> AdvicePreference:
        print(f"iteration {query.iteration}: which constraint should hold?")
        for i, c in enumerate(query.candidates):
            print(f"  [{i}] {c.render()}")
        print("  [n] none of these")
        while True:
            raw = input("> ").strip().lower()
            if raw in ("n", "none", ""):
                return AdvicePreference(None)
            if raw.isdigit() and int(raw) < len(query.candidates):
                return AdvicePreference(int(raw))
            print("enter a candidate number or n")
