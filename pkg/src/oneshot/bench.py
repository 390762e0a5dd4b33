"""Synthetic benchmark: ten parametric concept families over two
vocabularies, with seeded instance generators, structure-perturbed
negatives, and four induction arms that differ only in whether the plan
distance term and the preference queries are enabled.

Every negative is verified against the family's generating definition;
an instance a perturbation fails to push outside the concept is
re-perturbed until it lands outside.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, replace
from io import StringIO
from typing import Iterable, Sequence

from .advice import ScriptedOracle, SilentTeacher
from .coverage import covers
from .domain import Domain
from .logic import GroundExample, Literal, Term, Theory, Clause, intc, strc, var
from .loop import LoopConfig, MultiResult, evaluate_precision, run_multi
from .plans import derive_plan
from .worlds import assembly_domain, blocks_domain, std_constraints

ARMS = ("guided", "ilp", "ilp_score", "ilp_guidance")

# connector constants available per vocabulary, for the flip perturbation
_BLOCK_DIRS = ("NWTop", "NETop", "CTop", "ETop", "WTop", "NTop", "E")
_PORTS = ("Front", "Rear", "Top", "Side")


@dataclass(frozen=True)
class ConceptSpec:
    """One benchmark family.  Instances have two contained components
    with one size attribute each, a directional connector between them,
    and two named parameters anchored on the instance.  ``relation``
    names the hidden constraint tying sizes and parameters together."""

    name: str
    world: str
    comp1: str
    attr1: str
    comp2: str
    attr2: str
    connector: str
    constant: str
    param1: str
    param2: str
    relation: str  # sub1 | sub2 | greater | merge


FAMILIES: tuple[ConceptSpec, ...] = (
    ConceptSpec("UprightL", "blocks", "Row", "Width", "Tower", "Height", "SpRel", "NWTop", "base", "height", "sub1"),
    ConceptSpec("UprightTee", "blocks", "Row", "Width", "Tower", "Height", "SpRel", "CTop", "span", "rise", "sub1"),
    ConceptSpec("TwinTowers", "blocks", "Tower", "Height", "Tower", "Height", "SpRel", "E", "height", "gap", "merge"),
    ConceptSpec("Staircase", "blocks", "Row", "Width", "Tower", "Height", "SpRel", "ETop", "run", "rise", "greater"),
    ConceptSpec("Wall", "blocks", "Row", "Width", "Row", "Width", "SpRel", "NTop", "width", "layers", "merge"),
    ConceptSpec("Ledge", "blocks", "Row", "Width", "Tower", "Height", "SpRel", "WTop", "reach", "drop", "sub2"),
    ConceptSpec("Cart", "assembly", "Frame", "Length", "Drum", "Radius", "Mounted", "Front", "wheelbase", "clearance", "sub1"),
    ConceptSpec("Crane", "assembly", "Frame", "Length", "Drum", "Radius", "Mounted", "Top", "boom", "lift", "sub2"),
    ConceptSpec("Pulley", "assembly", "Drum", "Radius", "Drum", "Radius", "Mounted", "Side", "gauge", "tension", "merge"),
    ConceptSpec("Conveyor", "assembly", "Frame", "Length", "Drum", "Radius", "Mounted", "Rear", "span", "pitch", "greater"),
)


def family(name: str) -> ConceptSpec:
    for spec in FAMILIES:
        if spec.name == name:
            return spec
    raise KeyError(f"no benchmark concept named {name}")


def world_domain(spec: ConceptSpec) -> Domain:
    return blocks_domain() if spec.world == "blocks" else assembly_domain()


def _constants(spec: ConceptSpec) -> tuple[str, ...]:
    return _BLOCK_DIRS if spec.world == "blocks" else _PORTS


def _anchor(param: str) -> str:
    return param.capitalize()


def _draw_sizes(spec: ConceptSpec, rng: random.Random, lo: int, hi: int) -> tuple[int, int, int, int]:
    """Component sizes and parameter values (v1, v2, p1, p2) with the
    family relation enforced and no accidental collisions elsewhere."""
    if spec.relation in ("sub1", "sub2"):
        off = 1 if spec.relation == "sub1" else 2
        v2 = rng.randint(lo, hi)
        p2 = v2 + off
        v1 = rng.randint(lo, hi)
        while v1 in (v2, p2):
            v1 = rng.randint(lo, hi)
        return v1, v2, v1, p2
    if spec.relation == "greater":
        v2 = rng.randint(lo, hi - 1)
        v1 = v2 + rng.randint(1, 3)
        return v1, v2, v1, v2
    # merge: both sizes and the first parameter share one value
    h = rng.randint(lo, hi)
    p2 = rng.randint(lo, hi)
    while p2 == h:
        p2 = rng.randint(lo, hi)
    return h, h, h, p2


def make_instance(
    spec: ConceptSpec, rng: random.Random, lo: int = 3, hi: int = 9
) -> GroundExample:
    v1, v2, p1, p2 = _draw_sizes(spec, rng, lo, hi)
    s, a, b = strc("s"), strc("a"), strc("b")
    facts = (
        Literal(spec.comp1, (a,)),
        Literal(spec.comp2, (b,)),
        Literal(spec.attr1, (a, intc(v1))),
        Literal(spec.attr2, (b, intc(v2))),
        Literal(_anchor(spec.param1), (s, intc(p1))),
        Literal(_anchor(spec.param2), (s, intc(p2))),
        Literal("Contains", (s, a)),
        Literal("Contains", (s, b)),
        Literal(spec.connector, (b, a, strc(spec.constant))),
    )
    # duplicates collapse when attribute predicates coincide (merge families)
    uniq: list[Literal] = []
    for f in facts:
        if f not in uniq:
            uniq.append(f)
    head = Literal(spec.name, (s,))
    params = ((spec.param1, p1), (spec.param2, p2))
    return GroundExample(head, params, tuple(uniq))


def truth_theory(spec: ConceptSpec) -> Theory:
    """The generating definition used to vet negatives and to drive the
    scripted teacher."""
    S, A, B = var("S"), var("A"), var("B")
    W1, W2, P2 = var("W1"), var("W2"), var("P2")
    body: list[Literal] = [
        Literal("Contains", (S, A)),
        Literal("Contains", (S, B)),
        Literal(spec.comp1, (A,)),
        Literal(spec.comp2, (B,)),
    ]
    if spec.relation in ("sub1", "sub2"):
        off = 1 if spec.relation == "sub1" else 2
        body += [
            Literal(spec.attr1, (A, W1)),
            Literal(_anchor(spec.param1), (S, W1)),
            Literal(spec.attr2, (B, W2)),
            Literal(_anchor(spec.param2), (S, P2)),
            Literal("Sub", (W2, P2, intc(off))),
        ]
    elif spec.relation == "greater":
        body += [
            Literal(spec.attr1, (A, W1)),
            Literal(_anchor(spec.param1), (S, W1)),
            Literal(spec.attr2, (B, W2)),
            Literal(_anchor(spec.param2), (S, W2)),
            Literal("Greater", (W2, W1)),
        ]
    else:  # merge
        body += [
            Literal(spec.attr1, (A, W1)),
            Literal(spec.attr2, (B, W1)),
            Literal(_anchor(spec.param1), (S, W1)),
            Literal(_anchor(spec.param2), (S, P2)),
        ]
    body.append(Literal(spec.connector, (B, A, strc(spec.constant))))
    return Theory((Clause(Literal(spec.name, (S,)), tuple(body)),))


def _with_facts(x: GroundExample, facts: Iterable[Literal]) -> GroundExample:
    return GroundExample(x.head, x.params, tuple(facts))


def _flip_constant(x: GroundExample, spec: ConceptSpec, rng: random.Random) -> GroundExample:
    pool = [c for c in _constants(spec) if c != spec.constant]
    new = rng.choice(pool)
    out = []
    for f in x.facts:
        if f.pred == spec.connector:
            out.append(Literal(f.pred, f.args[:2] + (strc(new),)))
        else:
            out.append(f)
    return _with_facts(x, out)


def _bump_size(x: GroundExample, spec: ConceptSpec, which: int, delta: int) -> GroundExample:
    """Shift one size attribute; ``which`` picks the component."""
    target_pred = spec.attr2 if which else spec.attr1
    target_obj = strc("b") if which else strc("a")
    out = []
    for f in x.facts:
        if f.pred == target_pred and f.args[0] == target_obj:
            val = int(f.args[1].value) + delta
            out.append(Literal(f.pred, (f.args[0], intc(max(1, val)))))
        else:
            out.append(f)
    return _with_facts(x, out)


def _drop_containment(x: GroundExample, which: int) -> GroundExample:
    victim = Literal("Contains", (strc("s"), strc("b") if which else strc("a")))
    return _with_facts(x, (f for f in x.facts if f != victim))


def make_negative(
    spec: ConceptSpec,
    truth: Theory,
    rng: random.Random,
    kind: str,
    alt: int,
    lo: int = 3,
    hi: int = 9,
) -> GroundExample:
    """One negative of the given perturbation kind, re-perturbed until the
    generating definition rejects it."""
    base = make_instance(spec, rng, lo, hi)
    if kind == "flip":
        neg = _flip_constant(base, spec, rng)
    elif kind == "size":
        deltas = (1, -1, 2, -2, 3, -3, 4, -4)
        neg = base
        for d in deltas:
            neg = _bump_size(base, spec, alt % 2, d)
            if not covers(truth, neg).covered:
                break
    else:  # drop
        neg = _drop_containment(base, alt % 2)
    if covers(truth, neg).covered:
        raise RuntimeError(f"{spec.name}: {kind} perturbation stayed inside the concept")
    return neg


@dataclass(frozen=True)
class Task:
    """Everything one benchmark cell needs, drawn deterministically."""

    spec: ConceptSpec
    truth: Theory
    train: tuple[GroundExample, ...]
    pos: tuple[GroundExample, ...]
    neg: tuple[GroundExample, ...]


N_EVAL_POS = 12
N_EVAL_NEG_PER_KIND = 6


def _task_seed(spec: ConceptSpec, seed: int) -> int:
    return 1_000_003 * FAMILIES.index(spec) + 7_919 * seed + 17


def build_task(spec: ConceptSpec, seed: int, n_train: int) -> Task:
    rng = random.Random(_task_seed(spec, seed))
    truth = truth_theory(spec)
    pos = tuple(make_instance(spec, rng) for _ in range(N_EVAL_POS))
    neg = tuple(
        make_negative(spec, truth, rng, kind, alt)
        for kind in ("flip", "size", "drop")
        for alt in range(N_EVAL_NEG_PER_KIND)
    )
    train = tuple(make_instance(spec, rng) for _ in range(n_train))
    return Task(spec, truth, train, pos, neg)


@dataclass(frozen=True)
class BenchRow:
    arm: str
    concept: str
    n: int
    seed: int
    precision: float
    queries: int
    iterations: int
    seconds: float


def arm_config(arm: str, base: LoopConfig) -> LoopConfig:
    if arm not in ARMS:
        raise ValueError(f"unknown arm {arm!r}")
    return replace(
        base,
        use_distance=arm in ("guided", "ilp_score"),
        use_advice=arm in ("guided", "ilp_guidance"),
    )


def run_cell(
    spec: ConceptSpec, seed: int, n: int, arm: str, base: LoopConfig = LoopConfig()
) -> tuple[BenchRow, MultiResult]:
    task = build_task(spec, seed, n)
    cfg = arm_config(arm, replace(base, seed=seed))
    teacher = ScriptedOracle(task.truth) if cfg.use_advice else SilentTeacher()
    result = run_multi(task.train, world_domain(spec), std_constraints(), teacher, cfg)
    precision = evaluate_precision(result.theory, task.pos, task.neg)
    row = BenchRow(
        arm, spec.name, n, seed, precision, result.queries, result.iterations,
        round(result.seconds, 4),
    )
    return row, result


def run_benchmark(
    concepts: Sequence[str] | None = None,
    sizes: Sequence[int] = (1, 2, 3, 4, 5),
    seeds: Sequence[int] = (0, 1, 2, 3, 4),
    arms: Sequence[str] = ARMS,
    base: LoopConfig = LoopConfig(),
) -> list[BenchRow]:
    specs = FAMILIES if concepts is None else tuple(family(c) for c in concepts)
    rows: list[BenchRow] = []
    for spec in specs:
        for n in sizes:
            for seed in seeds:
                for arm in arms:
                    row, _ = run_cell(spec, seed, n, arm, base)
                    rows.append(row)
    return rows


def mean_precision(rows: Iterable[BenchRow], arm: str, n: int | None = None) -> float:
    vals = [r.precision for r in rows if r.arm == arm and (n is None or r.n == n)]
    if not vals:
        raise ValueError(f"no rows for arm {arm}")
    return sum(vals) / len(vals)


def mean_queries(rows: Iterable[BenchRow], arm: str, n: int | None = None) -> float:
    vals = [r.queries for r in rows if r.arm == arm and (n is None or r.n == n)]
    if not vals:
        raise ValueError(f"no rows for arm {arm}")
    return sum(vals) / len(vals)


CSV_COLUMNS = ("arm", "concept", "n", "seed", "precision", "queries", "iterations", "seconds")


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    out = StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.arm, r.concept, r.n, r.seed, r.precision, r.queries, r.iterations, r.seconds])
    return out.getvalue()


# ---------------------------------------------------------------------------
# plan corpus for distance checks
# ---------------------------------------------------------------------------


def plan_corpus(count: int = 100, seed: int = 0, min_bytes: int = 128) -> list[bytes]:
    """Plans of generator instances, each at least ``min_bytes`` long."""
    rng = random.Random(9_000_001 + seed)
    out: list[bytes] = []
    i = 0
    while len(out) < count:
        spec = FAMILIES[i % len(FAMILIES)]
        i += 1
        x = make_instance(spec, rng, lo=9, hi=16)
        plan = derive_plan(x.facts, world_domain(spec).rules)
        if len(plan) < min_bytes:
            raise RuntimeError(f"{spec.name} plan only {len(plan)} bytes")
        out.append(plan)
    return out


def tower_row_pair(size: int = 8) -> tuple[bytes, bytes]:
    """Plans for a bare tower and a bare row of the same size."""
    rules = blocks_domain().rules
    tower = (Literal("Tower", (strc("b"),)), Literal("Height", (strc("b"), intc(size))))
    row = (Literal("Row", (strc("a"),)), Literal("Width", (strc("a"), intc(size))))
    return derive_plan(tower, rules), derive_plan(row, rules)
