#!/usr/bin/env python3
"""With every agent on its own, random-value auctions behave like coupon collecting.

Each agent must be the top bidder once; that draw confirms it is alone.
So the sample count should average n * H_n. This script checks that at a
modest n and prints a few empirical percentiles.
"""
import statistics

from csl.bench import MSpec, SweepConfig, bound_curve, percentile, run_sweep

N, RUNS = 200, 200

recs = run_sweep(SweepConfig("auction-ig", [N], MSpec.parse("n"), runs=RUNS, master_seed=1))
mean = statistics.fmean(r.samples for r in recs)
print(f"n={N}, {RUNS} runs, all correct: {all(r.correct for r in recs)}")
print(f"mean samples {mean:.1f}   n*H_n {bound_curve('auction_mn', N):.1f}")
for q in (0.5, 0.9, 0.99):
    print(f"  p{int(q * 100):<3d} {percentile(recs, q)}")
