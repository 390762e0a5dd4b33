"""Beam search over clause refinements.

The search works on single-headed theories produced by variablizing one
ground example.  A refinement step applies exactly four operators:

* delete a body literal (never a session-preferred constraint),
* add a literal from the bottom clause that the clause lacks,
* unify two distinct variables of the same inferred type,
* add a preferred constraint literal.

Children must stay range-restricted, within the body bound, and are
deduplicated by alpha-normal form.  Ranking uses an injected score
function so callers can combine coverage loss with the plan distance
term or leave it out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .coverage import covers
from .domain import Domain
from .logic import (
    Clause,
    GroundExample,
    Literal,
    Substitution,
    Term,
    Theory,
    is_builtin,
    single,
    var,
    variablize,
)


@dataclass(frozen=True)
class SearchConfig:
    beam_width: int = 8
    depth_bound: int = 3
    arity_bound: int = 3
    max_body: int = 20
    node_budget: int = 1_000_000
    step_levels: int = 1
    miss_cost: float = 10.0
    length_cost: float = 0.01


def bottom_clause(
    x: GroundExample, domain: Domain, cfg: SearchConfig
) -> tuple[Clause, Substitution]:
    """Variablize the example and keep the body literals reachable from
    the head variables within ``depth_bound`` layers."""
    raw, inverse = variablize(x, domain.keep_constants)
    pool = [lit for lit in raw.body if len(lit.args) <= cfg.arity_bound]
    reached = set(raw.head.vars())
    admitted: set[int] = set()
    for _ in range(cfg.depth_bound):
        # the frontier freezes per layer so chains cannot tunnel deeper
        # than depth_bound just because of a favorable literal order
        frontier: set[str] = set()
        added = False
        for idx, lit in enumerate(pool):
            if idx in admitted:
                continue
            lit_vars = set(lit.vars())
            if lit_vars & reached or not lit_vars:
                admitted.add(idx)
                frontier |= lit_vars
                added = True
        reached |= frontier
        if not added or len(admitted) == len(pool):
            break
    kept = tuple(pool[i] for i in sorted(admitted))
    return Clause(raw.head, kept), inverse


def _coverage_fraction(
    t: Theory, examples: Iterable[GroundExample], budget: int
) -> float:
    xs = list(examples)
    if not xs:
        return 0.0
    hit = sum(1 for x in xs if covers(t, x, budget=budget).covered)
    return hit / len(xs)


def neg_log_likelihood(
    t: Theory,
    pos: Iterable[GroundExample],
    neg: Iterable[GroundExample],
    cfg: SearchConfig,
) -> float:
    """Coverage loss: miss_cost * (uncovered positive fraction plus
    covered negative fraction) plus length_cost per body literal."""
    pos = list(pos)
    neg = list(neg)
    miss = 0.0
    if pos:
        miss += 1.0 - _coverage_fraction(t, pos, cfg.node_budget)
    if neg:
        miss += _coverage_fraction(t, neg, cfg.node_budget)
    return cfg.miss_cost * miss + cfg.length_cost * t.body_size()


def _var_types(clause: Clause, domain: Domain) -> dict[str, str]:
    """Infer one type per variable from mode slots; builtins type their
    arguments as int.  Conflicting evidence leaves a variable untyped."""
    types: dict[str, str] = {}
    conflicted: set[str] = set()

    def note(name: str, ty: str) -> None:
        if name in conflicted:
            return
        if name in types and types[name] != ty:
            del types[name]
            conflicted.add(name)
            return
        types[name] = ty

    for lit in (clause.head, *clause.body):
        if is_builtin(lit.pred):
            for a in lit.args:
                if a.is_var:
                    note(str(a.value), "int")
            continue
        mode = domain.mode_for(lit.pred)
        if mode is None or len(mode.slots) != len(lit.args):
            continue
        for a, (_, ty) in zip(lit.args, mode.slots):
            if a.is_var:
                note(str(a.value), ty)
    return types


def _substitute_var(clause: Clause, old: Term, new: Term) -> Clause:
    def sub_lit(lit: Literal) -> Literal:
        return Literal(lit.pred, tuple(new if a == old else a for a in lit.args))

    body = []
    for lit in clause.body:
        lit = sub_lit(lit)
        if lit not in body:
            body.append(lit)
    return Clause(sub_lit(clause.head), tuple(body))


def refine_clause(
    clause: Clause,
    bottom: Clause,
    domain: Domain,
    cfg: SearchConfig,
    preferred: frozenset[Literal] = frozenset(),
) -> list[Clause]:
    """All admissible children of ``clause`` under the four operators."""
    children: list[Clause] = []
    body = clause.body

    protected_vars: set[str] = set()
    for lit in preferred:
        protected_vars |= set(lit.vars())

    for idx, lit in enumerate(body):
        if lit in preferred:
            continue
        children.append(Clause(clause.head, body[:idx] + body[idx + 1 :]))

    present = set(body)
    for lit in bottom.body:
        if lit not in present:
            children.append(Clause(clause.head, body + (lit,)))

    types = _var_types(clause, domain)
    cvars = sorted(clause.vars())
    for i, a in enumerate(cvars):
        for b in cvars[i + 1 :]:
            if a in protected_vars or b in protected_vars:
                continue
            ta, tb = types.get(a), types.get(b)
            if ta is None or ta != tb:
                continue
            children.append(_substitute_var(clause, var(b), var(a)))

    for lit in sorted(preferred, key=lambda l: l.sort_key()):
        if lit not in present:
            children.append(Clause(clause.head, body + (lit,)))

    out: list[Clause] = []
    seen: set[str] = set()
    for c in children:
        if len(c.body) > cfg.max_body:
            continue
        if not c.is_range_restricted():
            continue
        key = c.canonical().render()
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


def refinements(
    t: Theory,
    bottom: Clause,
    domain: Domain,
    cfg: SearchConfig,
    preferred: frozenset[Literal] = frozenset(),
) -> list[Theory]:
    """Children of a theory: one clause refined at a time."""
    out: list[Theory] = []
    seen: set[str] = set()
    for idx, clause in enumerate(t.clauses):
        for child in refine_clause(clause, bottom, domain, cfg, preferred):
            nt = Theory(t.clauses[:idx] + (child,) + t.clauses[idx + 1 :])
            key = nt.canonical().render()
            if key in seen:
                continue
            seen.add(key)
            out.append(nt)
    return out


@dataclass
class SearchContext:
    """Mutable state threaded through repeated search_step calls."""

    domain: Domain
    bottom: Clause
    cfg: SearchConfig
    score: Callable[[Theory], float]
    preferred: set[Literal] = field(default_factory=set)
    nodes_used: int = 0
    scored: dict[str, float] = field(default_factory=dict)

    def score_of(self, t: Theory) -> float:
        key = t.canonical().render()
        if key not in self.scored:
            self.nodes_used += 1
            self.scored[key] = self.score(t)
        return self.scored[key]


def _rank_key(score: float, t: Theory) -> tuple[float, int, str]:
    return (score, t.body_size(), t.render())


def search_step(ctx: SearchContext, t_prev: Theory) -> tuple[Theory, float]:
    """Run ``step_levels`` beam levels from ``t_prev``.  Returns the best
    strictly improving theory found, else ``t_prev`` unchanged."""
    base = ctx.score_of(t_prev)
    best_t, best_s = t_prev, base
    frontier = [t_prev]
    for _ in range(ctx.cfg.step_levels):
        ranked: list[tuple[float, Theory]] = []
        for t in frontier:
            for child in refinements(
                t, ctx.bottom, ctx.domain, ctx.cfg, frozenset(ctx.preferred)
            ):
                if ctx.nodes_used >= ctx.cfg.node_budget:
                    break
                ranked.append((ctx.score_of(child), child))
        if not ranked:
            break
        ranked.sort(key=lambda p: _rank_key(p[0], p[1]))
        frontier = [t for _, t in ranked[: ctx.cfg.beam_width]]
        top_s, top_t = ranked[0]
        if _rank_key(top_s, top_t) < _rank_key(best_s, best_t) and top_s < base:
            best_t, best_s = top_t, top_s
        if ctx.nodes_used >= ctx.cfg.node_budget:
            break
    if best_s < base:
        return best_t, best_s
    return t_prev, base


def initial_theory(
    x: GroundExample, domain: Domain, cfg: SearchConfig
) -> tuple[Theory, Clause, Substitution]:
    """Bottom clause as the starting hypothesis."""
    bottom, inverse = bottom_clause(x, domain, cfg)
    return single(bottom), bottom, inverse
