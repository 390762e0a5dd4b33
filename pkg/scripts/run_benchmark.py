#!/usr/bin/env python3
"""Run the synthetic concept benchmark and write the per-cell CSV.

The default grid is the full sweep: 10 concept families, training sizes
1..5, seeds 0..4, all four arms.  Use --quick for a small smoke grid.

    python3 scripts/run_benchmark.py --out results/benchmark.csv
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from oneshot import bench
from oneshot.loop import LoopConfig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/benchmark.csv")
    ap.add_argument("--sizes", default="1,2,3,4,5")
    ap.add_argument("--seeds", type=int, default=5, help="seeds 0..N-1")
    ap.add_argument("--arms", default=",".join(bench.ARMS))
    ap.add_argument("--iterations", type=int, default=10)
    ap.add_argument("--quick", action="store_true", help="single size and seed")
    args = ap.parse_args(argv)

    sizes = [1] if args.quick else [int(s) for s in args.sizes.split(",")]
    seeds = range(1 if args.quick else args.seeds)
    arms = args.arms.split(",")

    start = time.perf_counter()
    rows = bench.run_benchmark(
        None, sizes, list(seeds), arms, LoopConfig(max_iterations=args.iterations)
    )
    elapsed = time.perf_counter() - start

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(bench.rows_to_csv(rows))
    print(f"{len(rows)} cells in {elapsed:.1f}s -> {out}")

    print("\nmean precision by arm and training size:")
    for arm in arms:
        cells = "  ".join(f"n={n}:{bench.mean_precision(rows, arm, n):.3f}" for n in sizes)
        print(f"  {arm:14s} {cells}")
    print("\nmean queries per session:")
    for arm in arms:
        cells = "  ".join(f"n={n}:{bench.mean_queries(rows, arm, n):.1f}" for n in sizes)
        print(f"  {arm:14s} {cells}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
