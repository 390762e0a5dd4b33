"""The guided induction loop.

Each iteration takes one search step, optionally poses a constraint
preference query, conjoins an accepted constraint, and rescores.  The
score is coverage loss plus, when enabled, the plan distance between
hypothesis and example.  Accepted iterations strictly improve the score;
teacher preferences are kept even when the immediate score does not
improve, because they restrict the search space from then on.

The loop stops at a fixpoint (an iteration that changes nothing) or
after ``max_iterations``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

from .advice import AdviceEngine, AdviceQuery, Teacher, apply_advice
from .compressor import compressed_size
from .coverage import covers
from .distance import DistanceReport, conceptual_distance
from .domain import ConstraintLibrary, Domain
from .logic import GroundExample, Theory
from .search import (
    SearchConfig,
    SearchContext,
    initial_theory,
    neg_log_likelihood,
    search_step,
)


@dataclass(frozen=True)
class LoopConfig:
    max_iterations: int = 10
    search: SearchConfig = field(default_factory=SearchConfig)
    advice_k: int = 5
    use_distance: bool = True
    use_advice: bool = True
    seed: int = 0


@dataclass(frozen=True)
class IterationTrace:
    index: int
    theory: Theory
    nll: float
    distance: float | None  # None when the distance term is disabled
    score: float
    accepted: bool
    query: AdviceQuery | None
    choice: int | None


@dataclass
class InductionResult:
    theory: Theory
    traces: list[IterationTrace]
    queries: int
    iterations: int
    covered: bool
    distance: DistanceReport | None
    seconds: float
    nodes: int

    @property
    def final_score(self) -> float:
        return self.traces[-1].score


Compressor = Callable[[bytes], int]


def run_induction(
    x: GroundExample,
    domain: Domain,
    library: ConstraintLibrary,
    teacher: Teacher,
    cfg: LoopConfig = LoopConfig(),
    compressor: Compressor = compressed_size,
    observer: Callable[[IterationTrace], None] | None = None,
) -> InductionResult:
    """Induce a definition for ``x.head`` from the single example ``x``.

    ``observer`` sees each iteration trace as it is produced, which lets
    a session service stream progress while a teacher is attached."""
    started = time.perf_counter()
    t0, bottom, _ = initial_theory(x, domain, cfg.search)
    engine = AdviceEngine(library, cfg.advice_k)

    memo: dict[str, tuple[float, float | None]] = {}

    def parts(t: Theory) -> tuple[float, float | None]:
        key = t.canonical().render()
        if key not in memo:
            nll = neg_log_likelihood(t, [x], [], cfg.search)
            d = None
            if cfg.use_distance:
                d = conceptual_distance(t, x, domain.rules, compressor).ncd
            memo[key] = (nll, d)
        return memo[key]

    def total(t: Theory) -> float:
        nll, d = parts(t)
        return nll if d is None else nll + d

    ctx = SearchContext(
        domain,
        bottom,
        cfg.search,
        score=total,
        preferred=engine.preferred,
    )
    teacher.start_session(x)

    nll0, d0 = parts(t0)
    prev, prev_score = t0, total(t0)
    traces = [IterationTrace(0, t0, nll0, d0, prev_score, True, None, None)]
    if observer is not None:
        observer(traces[0])
    queries = 0

    for i in range(1, cfg.max_iterations + 1):
        t_search, _ = search_step(ctx, prev)
        query = None
        choice = None
        added: tuple = ()
        if cfg.use_advice:
            query = engine.next_query(t_search, x, i, cfg.search.node_budget)
            if query is not None:
                queries += 1
                pref = teacher.answer(query)
                picked = pref.pick(query)
                if picked is not None:
                    choice = pref.chosen
                added = engine.accept(picked)
        t_new = apply_advice(t_search, added, cfg.search.max_body)
        nll, d = parts(t_new)
        score = total(t_new)
        accepted = score < prev_score
        fixpoint = t_new.canonical().render() == prev.canonical().render()
        traces.append(IterationTrace(i, t_new, nll, d, score, accepted, query, choice))
        if observer is not None:
            observer(traces[-1])
        prev, prev_score = t_new, score
        if fixpoint:
            break

    report = None
    if cfg.use_distance:
        report = conceptual_distance(prev, x, domain.rules, compressor)
    return InductionResult(
        theory=prev,
        traces=traces,
        queries=queries,
        iterations=traces[-1].index,
        covered=covers(prev, x, budget=cfg.search.node_budget).covered,
        distance=report,
        seconds=time.perf_counter() - started,
        nodes=ctx.nodes_used,
    )


def evaluate_precision(
    t: Theory,
    pos: Sequence[GroundExample],
    neg: Sequence[GroundExample],
    budget: int = 1_000_000,
) -> float:
    """Covered positives over all covered instances; 1.0 when the theory
    covers nothing at all."""
    cp = sum(1 for x in pos if covers(t, x, budget=budget).covered)
    cn = sum(1 for x in neg if covers(t, x, budget=budget).covered)
    if cp + cn == 0:
        return 1.0
    return cp / (cp + cn)


@dataclass
class MultiResult:
    theory: Theory
    runs: list[InductionResult]
    queries: int
    iterations: int
    seconds: float


def run_multi(
    examples: Sequence[GroundExample],
    domain: Domain,
    library: ConstraintLibrary,
    teacher: Teacher,
    cfg: LoopConfig = LoopConfig(),
    compressor: Compressor = compressed_size,
) -> MultiResult:
    """Induce from several examples under one iteration budget.

    The budget is split evenly across per-example runs and the resulting
    clauses are combined into one disjunctive theory.
    """
    if not examples:
        raise ValueError("need at least one example")
    per = max(1, cfg.max_iterations // len(examples))
    sub = replace(cfg, max_iterations=per)
    runs = [run_induction(x, domain, library, teacher, sub, compressor) for x in examples]
    clauses = []
    seen: set[str] = set()
    for r in runs:
        for c in r.theory.clauses:
            key = c.canonical().render()
            if key not in seen:
                seen.add(key)
                clauses.append(c)
    return MultiResult(
        theory=Theory(tuple(clauses)),
        runs=runs,
        queries=sum(r.queries for r in runs),
        iterations=sum(r.iterations for r in runs),
        seconds=sum(r.seconds for r in runs),
    )
