"""Theta-subsumption coverage testing.

A clause covers a ground example when some substitution maps every body
literal into the example's fact set and every built-in evaluates true.
The matcher is a depth-first search with forward checking; fact literals
are tried in ascending order of candidate count and built-ins are
evaluated as soon as their arguments are bound.  Work is capped by a
binding budget so pathological clauses fail loudly instead of hanging.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import (
    BUILTIN_ARITY,
    GroundExample,
    Literal,
    LogicError,
    Substitution,
    Theory,
    eval_builtin,
    is_builtin,
)

DEFAULT_BUDGET = 10**6


class CoverageBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoverageResult:
    covered: bool
    witness: Substitution | None = None
    nodes: int = 0


def _head_binding(clause_head: Literal, x_head: Literal) -> Substitution | None:
    if clause_head.pred != x_head.pred or clause_head.arity != x_head.arity:
        return None
    theta = Substitution()
    for pat, val in zip(clause_head.args, x_head.args):
        if pat.is_var:
            try:
                theta.bind(str(pat.value), val)
            except LogicError:
                return None
        elif pat != val:
            return None
    return theta


def _compatible(pat: Literal, fact: Literal, theta: Substitution) -> Substitution | None:
    trial = theta.copy()
    for p, v in zip(pat.args, fact.args):
        if p.is_var:
            bound = trial.get(str(p.value))
            if bound is None:
                trial.bind(str(p.value), v)
            elif bound != v:
                return None
        elif p != v:
            return None
    return trial


def covers(t: Theory, x: GroundExample, budget: int = DEFAULT_BUDGET) -> CoverageResult:
    """Theta-subsumption check of a theory against one ground example.

    A theory covers when any clause does.  Returns the witness
    substitution of the first covering clause (clauses tried in order,
    facts in deterministic sorted order).  Raises CoverageBudgetError when
    more than ``budget`` candidate bindings get attempted.
    """
    counter = [0]
    facts = x.sorted_facts()
    by_pred: dict[tuple[str, int], list[Literal]] = {}
    for f in facts:
        by_pred.setdefault((f.pred, f.arity), []).append(f)

    for clause in t.clauses:
        theta0 = _head_binding(clause.head, x.head)
        if theta0 is None:
            continue
        fact_lits = list(clause.fact_literals())
        builtins = list(clause.constraint_literals())
        for b in builtins:
            if b.arity != BUILTIN_ARITY[b.pred]:
                raise LogicError(
                    f"{b.pred} expects {BUILTIN_ARITY[b.pred]} arguments, got {b.arity}"
                )
        # cheap static ordering: fewest matching facts first
        fact_lits.sort(
            key=lambda l: (len(by_pred.get((l.pred, l.arity), ())), l.sort_key())
        )
        if any((l.pred, l.arity) not in by_pred for l in fact_lits):
            continue

        def check_builtins(theta: Substitution, done: set[int]) -> bool:
            for i, b in enumerate(builtins):
                if i in done:
                    continue
                ground = theta.apply_literal(b)
                if ground.is_ground():
                    try:
                        value = eval_builtin(ground)
                    except LogicError:
                        # a non-integer binding makes the constraint false
                        value = False
                    if not value:
                        return False
                    done.add(i)
            return True

        def dfs(i: int, theta: Substitution, done: set[int]) -> Substitution | None:
            if i == len(fact_lits):
                if len(done) == len(builtins):
                    return theta
                return None  # some built-in never became ground
            pat = fact_lits[i]
            for fact in by_pred[(pat.pred, pat.arity)]:
                counter[0] += 1
                if counter[0] > budget:
                    raise CoverageBudgetError(
                        f"coverage search exceeded {budget} candidate bindings"
                    )
                trial = _compatible(pat, fact, theta)
                if trial is None:
                    continue
                trial_done = set(done)
                if not check_builtins(trial, trial_done):
                    continue
                found = dfs(i + 1, trial, trial_done)
                if found is not None:
                    return found
            return None

        done0: set[int] = set()
        if not check_builtins(theta0, done0):
            continue
        witness = dfs(0, theta0, done0)
        if witness is not None:
            return CoverageResult(True, witness, counter[0])
    return CoverageResult(False, None, counter[0])
