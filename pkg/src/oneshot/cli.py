"""Command line entry points.

Subcommands:

    induce     learn a definition from one fact file
    benchmark  run the synthetic concept benchmark
    distance   plan distance between a theory and an example
    plan       derive and print a plan
    pac        sample and query complexity calculators
    eval       precision of a theory on labelled fact files
    serve      expose one induction session over HTTP
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import bench, pac, session
from .advice import ReplayTeacher, ScriptedOracle, SilentTeacher, TerminalTeacher
from .compressor import compressed_size
from .distance import conceptual_distance
from .loop import LoopConfig, evaluate_precision, run_induction
from .parsing import load_constraints, load_domain, load_example, load_theory
from .plans import example_plan, ground_theory, derive_plan
from .search import SearchConfig
from .service import serve


def _loop_config(args) -> LoopConfig:
    search = SearchConfig(
        beam_width=args.beam,
        node_budget=args.budget,
    )
    return LoopConfig(
        max_iterations=args.iterations,
        search=search,
        advice_k=args.advice_k,
        use_distance=not args.no_distance,
        use_advice=not args.no_advice,
        seed=args.seed,
    )


def _add_loop_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--iterations", type=int, default=10, help="iteration budget")
    p.add_argument("--advice-k", type=int, default=5, help="candidates per query")
    p.add_argument("--beam", type=int, default=8, help="beam width")
    p.add_argument("--budget", type=int, default=1_000_000, help="node budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-distance", action="store_true", help="drop the plan distance term")
    p.add_argument("--no-advice", action="store_true", help="never pose preference queries")


def _cmd_induce(args) -> int:
    x = load_example(args.facts)
    domain = load_domain(args.domain)
    library = load_constraints(args.constraints)

    if args.replay:
        old = session.read_log(args.replay)
        hello = next(r for r in old if r["kind"] == "hello")
        conf = hello["config"]
        cfg = LoopConfig(
            max_iterations=conf["iterations"],
            search=SearchConfig(beam_width=args.beam, node_budget=args.budget),
            advice_k=conf["advice_k"],
            use_distance=conf["use_distance"],
            use_advice=conf["use_advice"],
            seed=conf["seed"],
        )
        teacher = ReplayTeacher(session.replay_choices(old))
    else:
        cfg = _loop_config(args)
        if args.truth:
            teacher = ScriptedOracle(load_theory(args.truth))
        elif args.interactive:
            teacher = TerminalTeacher()
        else:
            teacher = SilentTeacher()

    result = run_induction(x, domain, library, teacher, cfg)
    records = session.records_from_result(x, cfg, result)

    if args.replay:
        if session.to_ndjson(records) == session.to_ndjson(old):
            print("replay matches the original log")
        else:
            print("replay DIVERGES from the original log", file=sys.stderr)
            return 1
    if args.log:
        session.write_log(args.log, records)
    if args.out:
        Path(args.out).write_text(result.theory.render())

    print(result.theory.render(), end="")
    print(f"covered: {result.covered}")
    if result.distance is not None:
        print(f"distance: {result.distance.line()}")
    print(f"score: {result.final_score:.4f}")
    print(f"queries: {result.queries}  iterations: {result.iterations}  seconds: {result.seconds:.2f}")
    return 0


def _cmd_benchmark(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    seeds = list(range(args.seeds))
    arms = args.arms.split(",")
    concepts = args.concepts.split(",") if args.concepts else None
    base = LoopConfig(max_iterations=args.iterations)
    rows = bench.run_benchmark(concepts, sizes, seeds, arms, base)
    csv_text = bench.rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        print(csv_text, end="")
    print()
    print("mean precision by arm and training size:")
    for arm in arms:
        cells = "  ".join(f"n={n}:{bench.mean_precision(rows, arm, n):.3f}" for n in sizes)
        print(f"  {arm:14s} {cells}")
    return 0


def _cmd_distance(args) -> int:
    t = load_theory(args.theory)
    x = load_example(args.facts)
    domain = load_domain(args.domain)
    report = conceptual_distance(t, x, domain.rules, compressed_size)
    print(report.line())
    return 0


def _cmd_plan(args) -> int:
    x = load_example(args.facts)
    domain = load_domain(args.domain)
    if args.theory:
        t = load_theory(args.theory)
        facts = ground_theory(t, x)
        plan = derive_plan(facts, domain.rules)
    else:
        plan = example_plan(x, domain.rules)
    sys.stdout.write(plan.decode())
    return 0


def _cmd_pac(args) -> int:
    if args.calc == "space":
        print(f"log_size: {pac.log_hypothesis_space_size(args.t, args.p, args.m, args.i, args.j)}")
        print(f"size: {pac.hypothesis_space_size(args.t, args.p, args.m, args.i, args.j)}")
    elif args.calc == "samples":
        n = pac.sample_complexity(args.epsilon, args.delta, args.d, args.L, args.h0, args.m)
        print(f"examples: {n}")
    elif args.calc == "step":
        lo, hi = pac.refinement_distance_bounds(
            args.d_prev, args.d_cur, args.universe, args.t, args.q, args.pr
        )
        print(f"lower: {lo}")
        print(f"upper: {hi}")
    else:
        print(f"examples_per_query: {pac.advice_example_rate(args.n_star, args.observed, args.iterations)}")
    return 0


def _facts_in(path: str) -> list:
    p = Path(path)
    files = sorted(p.glob("*.facts")) if p.is_dir() else [p]
    return [load_example(f) for f in files]


def _cmd_eval(args) -> int:
    t = load_theory(args.theory)
    pos = [x for p in args.pos for x in _facts_in(p)]
    neg = [x for p in args.neg for x in _facts_in(p)]
    precision = evaluate_precision(t, pos, neg)
    print(f"positives: {len(pos)}  negatives: {len(neg)}")
    print(f"precision: {precision:.4f}")
    return 0


def _cmd_serve(args) -> int:
    x = load_example(args.facts)
    domain = load_domain(args.domain)
    library = load_constraints(args.constraints)
    cfg = _loop_config(args)
    if cfg.use_advice is False:
        print("serve without advice poses no queries; enabling advice", file=sys.stderr)
        cfg = replace(cfg, use_advice=True)
    serve(x, domain, library, cfg, host=args.host, port=args.port, ui_dir=args.ui)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oneshot", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("induce", help="learn a definition from one fact file")
    p.add_argument("--facts", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--constraints", required=True)
    p.add_argument("--truth", help="theory file driving a scripted teacher")
    p.add_argument("--interactive", action="store_true", help="ask on the terminal")
    p.add_argument("--log", help="write the session transcript here")
    p.add_argument("--replay", help="re-run a transcript and verify it")
    p.add_argument("--out", help="write the final theory here")
    _add_loop_options(p)
    p.set_defaults(fn=_cmd_induce)

    p = sub.add_parser("benchmark", help="run the synthetic concept benchmark")
    p.add_argument("--concepts", help="comma-separated family names (default all)")
    p.add_argument("--sizes", default="1,2,3,4,5")
    p.add_argument("--seeds", type=int, default=5, help="seeds 0..N-1")
    p.add_argument("--arms", default=",".join(bench.ARMS))
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--out", help="write rows as csv")
    p.set_defaults(fn=_cmd_benchmark)

    p = sub.add_parser("distance", help="plan distance between theory and example")
    p.add_argument("--theory", required=True)
    p.add_argument("--facts", required=True)
    p.add_argument("--domain", required=True)
    p.set_defaults(fn=_cmd_distance)

    p = sub.add_parser("plan", help="derive and print a plan")
    p.add_argument("--facts", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--theory", help="ground this theory on the example first")
    p.set_defaults(fn=_cmd_plan)

    p = sub.add_parser("pac", help="sample and query complexity calculators")
    pac_sub = p.add_subparsers(dest="calc", required=True)
    q = pac_sub.add_parser("space", help="hypothesis space size")
    q.add_argument("--t", type=int, required=True, help="types")
    q.add_argument("--p", type=int, required=True, help="predicates")
    q.add_argument("--m", type=int, required=True, help="constants")
    q.add_argument("--i", type=int, required=True, help="variable depth")
    q.add_argument("--j", type=int, required=True, help="arity bound")
    q = pac_sub.add_parser("samples", help="examples needed for epsilon and delta")
    q.add_argument("--epsilon", type=float, required=True)
    q.add_argument("--delta", type=float, required=True)
    q.add_argument("--d", type=int, required=True, help="branching per pass")
    q.add_argument("--L", type=int, required=True, help="refinement passes")
    q.add_argument("--h0", type=int, required=True, help="start hypothesis size")
    q.add_argument("--m", type=int, required=True, help="constants")
    q = pac_sub.add_parser("step", help="distance bounds for one refinement")
    q.add_argument("--d-prev", type=float, required=True)
    q.add_argument("--d-cur", type=float, required=True)
    q.add_argument("--universe", type=int, required=True)
    q.add_argument("--t", type=int, required=True, help="numeric variables")
    q.add_argument("--q", type=int, required=True, help="constraint arity")
    q.add_argument("--pr", type=float, default=0.5, help="acceptance rate")
    q = pac_sub.add_parser("advice", help="examples replaced per advice query")
    q.add_argument("--n-star", type=int, required=True)
    q.add_argument("--observed", type=int, required=True)
    q.add_argument("--iterations", type=int, required=True)
    p.set_defaults(fn=_cmd_pac)

    p = sub.add_parser("eval", help="precision of a theory on labelled facts")
    p.add_argument("--theory", required=True)
    p.add_argument("--pos", nargs="+", required=True, help="fact files or directories")
    p.add_argument("--neg", nargs="+", required=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("serve", help="expose one session over HTTP")
    p.add_argument("--facts", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--constraints", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--ui", help="serve this directory at /")
    _add_loop_options(p)
    p.set_defaults(fn=_cmd_serve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
