"""Exhaustive small-n cross-checks between analytic and brute-force answers.

Each check returns a :class:`Report`; ``failures`` holds a readable
description of every disagreement.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .gadgets import (
    GadgetProduct,
    auction_gadget,
    congestion_gadget,
    normal_form_gadget,
    one_factorization,
    top_two,
)
from .oracle import OracleHandle, brute_force_auction_ne, brute_force_ne
from .partition import all_partitions, bell_numbers


@dataclass
class Report:
    name: str
    checked: int = 0
    disagreements: int = 0
    failures: list[str] = field(default_factory=list)  # first few only

    @property
    def ok(self) -> bool:
        return self.checked > 0 and self.disagreements == 0

    def fail(self, msg: str) -> None:
        self.disagreements += 1
        if len(self.failures) < 20:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} cases, {self.disagreements} disagreements"


def partition_counts(max_n: int = 10) -> Report:
    """Bell triangle against brute-force enumeration."""
    rep = Report("partition-count")
    bells = bell_numbers(max_n)
    for n in range(1, max_n + 1):
        rep.checked += 1
        count = sum(1 for _ in all_partitions(n))
        if count != bells[n]:
            rep.fail(f"n={n}: enumerated {count}, triangle {bells[n]}")
    return rep


def product_equivalence(max_n: int = 6, max_k: int = 3, flavor: str = "normal-form") -> Report:
    """Analytic product oracle vs. deviation search on the expanded game."""
    rep = Report(f"product-oracle[{flavor}]")
    for n in range(2, max_n + 1):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        products = [GadgetProduct(n, flavor, combo)
                    for k in range(1, max_k + 1)
                    for combo in itertools.combinations(pairs, k)]
        games = [(g, g.expand()) for g in products]
        for S in all_partitions(n):
            oracle = OracleHandle(S)
            for g, game in games:
                rep.checked += 1
                if oracle.observe_product(g) != brute_force_ne(game, S):
                    rep.fail(f"S={S} pairs={g.pairs}")
    return rep


def _target_sets(n: int, top: int, rng: np.random.Generator, sample: int | None):
    others = [j for j in range(1, n + 1) if j != top]
    every = [c for k in range(len(others) + 1) for c in itertools.combinations(others, k)]
    if sample is None or sample >= len(every):
        return every
    picks = rng.choice(len(every), size=sample, replace=False)
    return [every[i] for i in picks]


def auction_equivalence(max_n: int = 6, draws: int = 50, seed: int = 0,
                        exhaustive_upto: int = 4, sample: int = 200) -> Report:
    """Analytic auction oracle vs. brute-force coalition deviations.

    Target sets are exhaustive up to ``exhaustive_upto`` agents and a
    random sample of ``sample`` sets beyond (all of them when fewer exist).
    """
    rep = Report("auction-oracle")
    rng = np.random.default_rng(seed)
    for n in range(1, max_n + 1):
        for S in all_partitions(n):
            oracle = OracleHandle(S)
            for _ in range(draws):
                v = rng.random(n)
                top, _, _ = top_two(v)
                limit = None if n <= exhaustive_upto else sample
                for T in _target_sets(n, top, rng, limit):
                    a = auction_gadget(v, T)
                    rep.checked += 1
                    if oracle.observe_auction(a, T) != brute_force_auction_ne(a, S):
                        rep.fail(f"S={S} v={v.round(3).tolist()} T={T}")
    return rep


def pair_gadget_iff(kind: str, max_n: int = 6) -> Report:
    """Default profile is stable exactly when the two players are in different coalitions."""
    make = {"normal-form": normal_form_gadget, "congestion": congestion_gadget}[kind]
    rep = Report(f"{kind}-gadget-iff")
    for n in range(2, max_n + 1):
        games = {(x, y): make(n, x, y) for x, y in itertools.permutations(range(1, n + 1), 2)}
        for S in all_partitions(n):
            for (x, y), game in games.items():
                rep.checked += 1
                if brute_force_ne(game, S) != (not S.same_coalition(x, y)):
                    rep.fail(f"S={S} x={x} y={y}")
    return rep


def auction_gadget_iff(max_n: int = 6, draws: int = 10, seed: int = 1) -> Report:
    """Truthful bidding is stable exactly when no target shares the top bidder's coalition."""
    rep = Report("auction-gadget-iff")
    rng = np.random.default_rng(seed)
    for n in range(1, max_n + 1):
        for S in all_partitions(n):
            for _ in range(draws):
                v = rng.random(n)
                top, _, _ = top_two(v)
                for T in _target_sets(n, top, rng, None):
                    rep.checked += 1
                    expected = not any(S.same_coalition(top, j) for j in T)
                    if brute_force_auction_ne(auction_gadget(v, T), S) != expected:
                        rep.fail(f"S={S} v={v.round(3).tolist()} T={T}")
    return rep


def factorization_cover(max_n: int = 64) -> Report:
    """Every edge of K_n in exactly one matching, matchings vertex-disjoint."""
    rep = Report("one-factorization")
    for n in range(2, max_n + 1):
        rep.checked += 1
        sched = one_factorization(n)
        expected_len = n - 1 if n % 2 == 0 else n
        if len(sched) != expected_len:
            rep.fail(f"n={n}: {len(sched)} matchings")
        seen: dict[tuple[int, int], int] = {}
        for matching in sched:
            ends = [a for p in matching for a in p]
            if len(ends) != len(set(ends)):
                rep.fail(f"n={n}: matching {matching} reuses a vertex")
            for x, y in matching:
                e = (min(x, y), max(x, y))
                seen[e] = seen.get(e, 0) + 1
        every = set(itertools.combinations(range(1, n + 1), 2))
        if set(seen) != every or any(c != 1 for c in seen.values()):
            rep.fail(f"n={n}: edges not covered exactly once")
    return rep


def run_all(quick: bool = False) -> list[Report]:
    top = 5 if quick else 6
    return [
        partition_counts(),
        pair_gadget_iff("normal-form", top),
        pair_gadget_iff("congestion", top),
        auction_gadget_iff(top),
        product_equivalence(top),
        product_equivalence(min(top, 5), 2, "congestion"),
        auction_equivalence(top, draws=10 if quick else 50),
        factorization_cover(),
    ]
