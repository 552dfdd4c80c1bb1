#!/usr/bin/env python3
"""Walk through the three gadget families on tiny games.

For every partition of three agents we ask whether the default profile of
a gadget survives coalition deviations, once by brute force and once with
the closed-form rule the learners rely on.
"""
from csl import CoalitionStructure, auction_gadget, congestion_gadget, normal_form_gadget
from csl.gadgets import congestion_table
from csl.oracle import brute_force_auction_ne, brute_force_ne
from csl.partition import all_partitions

N = 3

print("Prisoner's dilemma between agents 1 and 2 (agent 3 is a dummy)")
pd = normal_form_gadget(N, 1, 2)
for prof in [("D", "D", "D"), ("C", "C", "D"), ("C", "D", "D")]:
    print("  ", prof, "->", pd.utility(prof))

print("\nRouting game path costs (x path, y path) -> (x cost, y cost)")
for (px, py), (ux, uy) in congestion_table().items():
    print(f"   {px:8s} {py:8s} -> {float(-ux):.1f}, {float(-uy):.1f}")

cg = congestion_gadget(N, 1, 2)
v = (0.9, 0.5, 0.3)
auction = auction_gadget(v, [2])
print(f"\nAuction with values {v}, targets {{2}}: reserves {auction.reserves.tolist()}")

print("\npartition        PD stable   routing stable   auction stable")
for s in all_partitions(N):
    print(f"   {str(s):14s} {brute_force_ne(pd, s)!s:11s} {brute_force_ne(cg, s)!s:16s} "
          f"{brute_force_auction_ne(auction, s)}")

# The rule: pair gadgets are stable iff 1 and 2 are apart; the auction iff 2 is apart from the top bidder 1.
for s in all_partitions(N):
    assert brute_force_ne(pd, s) == brute_force_ne(cg, s) == (not s.same_coalition(1, 2))
    assert brute_force_auction_ne(auction, s) == (not s.same_coalition(1, 2))
print("\nbrute force matches the closed-form rule on all", sum(1 for _ in all_partitions(N)), "partitions")
