#!/usr/bin/env python3
"""Hide a coalition structure and recover it with each learner.

Prints the number of games each learner needed, next to the
information-theoretic floor ceil(log2 B_n) and the n log2 n + 3n ceiling.
"""
import math

from csl import OracleHandle, ValueStream, auction_ig, daig, graphical_ig, ig, random_structure
from csl.partition import bell_log2_lower_bound

N, M, SEED = 24, 5, 7

truth = random_structure(N, M, SEED)
print("hidden structure:", truth)
print(f"floor ceil(log2 B_{N}) = {bell_log2_lower_bound(N)}, ceiling = {N * math.log2(N) + 3 * N:.1f}\n")

runs = {
    "ig (prisoner's dilemma)": lambda o: ig(N, o),
    "ig (routing game)": lambda o: ig(N, o, flavor="congestion"),
    "graphical ig": lambda o: graphical_ig(N, o),
    "designed-item auctions": lambda o: daig(N, o),
    "random-value auctions": lambda o: auction_ig(N, o, ValueStream(N, SEED)),
}
for name, learn in runs.items():
    oracle = OracleHandle(truth)
    result = learn(oracle)
    status = "ok" if result.structure == truth else "WRONG"
    print(f"{name:26s} {result.queries:5d} games  {status}")
