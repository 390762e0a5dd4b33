#!/usr/bin/env python3
"""Walk through one guided induction run on the packaged L-shape example.

Prints the bottom clause, the per-iteration trace with the teacher's
answers, the final theory, its plan distance to the example, and the
plan both of them expand to.
"""

from __future__ import annotations

import sys

from oneshot.advice import ScriptedOracle
from oneshot.loop import LoopConfig, run_induction
from oneshot.plans import example_plan, ground_theory, derive_plan
from oneshot.search import SearchConfig, bottom_clause
from oneshot.worlds import blocks_domain, l_shape_example, l_truth, std_constraints


def main() -> int:
    x = l_shape_example()
    domain = blocks_domain()
    library = std_constraints()

    print(f"example: {x.head.render()}")
    for fact in x.sorted_facts():
        print(f"  {fact.render()}")

    bottom, _ = bottom_clause(x, domain, SearchConfig())
    print(f"\nbottom clause:\n  {bottom.render()}")

    def show(tr):
        mark = "accepted" if tr.accepted else "kept previous"
        dist = "-" if tr.distance is None else f"{tr.distance:.4f}"
        print(f"  iter {tr.index}: nll={tr.nll:.4f} dist={dist} "
              f"score={tr.score:.4f} ({mark})")
        if tr.query is not None:
            for rank, cand in enumerate(tr.query.candidates):
                star = " <- chosen" if tr.choice == rank else ""
                print(f"      option {rank}: {cand.literal.render()}  [{cand.gloss}]{star}")

    print("\nrefinement trace:")
    result = run_induction(
        x, domain, library, ScriptedOracle(l_truth()), LoopConfig(), observer=show
    )

    print(f"\nfinal theory ({result.queries} queries, {result.iterations} iterations):")
    print("  " + result.theory.render().strip())
    if result.distance is not None:
        print(f"plan distance: {result.distance.line()}")

    plan = derive_plan(ground_theory(result.theory, x), domain.rules)
    print("\nplan from the induced theory:")
    for step in plan.decode().splitlines():
        print(f"  {step}")
    print("matches the example's own plan:",
          plan == example_plan(x, domain.rules))
    return 0


if __name__ == "__main__":
    sys.exit(main())
