"""Coalition-structure learners driven by a one-bit oracle.

All learners start from singletons and grow coalitions by merging pairs
found with adaptive binary search over candidate sets. They only talk to
the world through an :class:`~csl.oracle.OracleHandle` (and, for
``auction_ig``, a :class:`~csl.oracle.ValueStream`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .gadgets import GadgetProduct, auction_gadget, designed_item, one_factorization
from .oracle import OracleHandle, ValueStream
from .partition import CoalitionStructure, ceil_log2

StepCallback = Callable[[object, bool, CoalitionStructure], None]


@dataclass(frozen=True)
class LearnResult:
    structure: CoalitionStructure
    queries: int
    per_type_usage: Optional[dict[int, int]] = None
    draws: Optional[int] = None


class _Working:
    """Mutable working partition owned by a single learner run."""

    def __init__(self, n: int):
        self.n = n
        self.labels = np.arange(1, n + 1)
        self.members = {i: [i] for i in range(1, n + 1)}

    def block(self, i: int) -> int:
        return int(self.labels[i - 1])

    def coalition(self, i: int) -> list[int]:
        return self.members[self.block(i)]

    def outside(self, i: int) -> np.ndarray:
        """Agents not currently grouped with ``i``, ascending."""
        return np.flatnonzero(self.labels != self.labels[i - 1]) + 1

    def merge(self, i: int, j: int) -> None:
        a, b = self.block(i), self.block(j)
        if a == b:
            raise ValueError("merge within a coalition")
        keep, drop = min(a, b), max(a, b)
        moved = self.members.pop(drop)
        self.labels[np.asarray(moved) - 1] = keep
        self.members[keep] = sorted(self.members[keep] + moved)

    def snapshot(self) -> CoalitionStructure:
        return CoalitionStructure(tuple(int(b) for b in self.labels))


def _halves(t):
    half = (len(t) + 1) // 2
    return t[:half], t[half:]


def _product_asker(n, oracle, flavor, callback):
    def ask(pairs, work):
        g = GadgetProduct(n, flavor, tuple(pairs))
        answer = oracle.observe_product(g)
        if callback is not None:
            callback(g, answer, work.snapshot())
        return answer
    return ask


def ig(n: int, oracle: OracleHandle, flavor: str = "normal-form",
       callback: StepCallback | None = None) -> LearnResult:
    """Iterative grouping with products of pair gadgets.

    ``flavor="congestion"`` swaps in the routing gadget. A candidate set
    that is already empty is treated as a trivially stable game and costs
    no query.
    """
    start = oracle.query_count
    work = _Working(n)
    ask = _product_asker(n, oracle, flavor, callback)
    for i in range(1, n + 1):
        while True:
            cand = work.outside(i)
            if cand.size == 0 or ask([(i, j) for j in cand], work):
                break
            while len(cand) > 1:
                alpha, beta = _halves(cand)
                cand = beta if ask([(i, j) for j in alpha], work) else alpha
            work.merge(i, int(cand[0]))
    return LearnResult(work.snapshot(), oracle.query_count - start)


def graphical_ig(n: int, oracle: OracleHandle,
                 callback: StepCallback | None = None) -> LearnResult:
    """Iterative grouping restricted to gadgets laid out on a matching.

    Matchings come from :func:`one_factorization` and are consumed in
    generation order, so every query is a degree-one graphical game.
    """
    start = oracle.query_count
    work = _Working(n)
    ask = _product_asker(n, oracle, "graphical", callback)
    schedule = one_factorization(n).matchings if n >= 2 else ()
    for matching in schedule:
        while True:
            cand = [(x, y) for x, y in matching if work.block(x) != work.block(y)]
            if not cand or ask(cand, work):
                break
            while len(cand) > 1:
                alpha, beta = _halves(cand)
                cand = beta if ask(alpha, work) else alpha
            work.merge(*cand[0])
    return LearnResult(work.snapshot(), oracle.query_count - start)


def daig(n: int, oracle: OracleHandle,
         callback: StepCallback | None = None) -> LearnResult:
    """Iterative grouping with designed single-bidder items.

    The item type follows the most recently discovered member, which
    spreads item usage across types. The stability check on an empty
    target set is still sent to the oracle, since it consumes an item.
    """
    start = oracle.query_count
    work = _Working(n)
    usage = {i: 0 for i in range(1, n + 1)}

    def ask(x, targets):
        item = designed_item(n, x)
        a = auction_gadget(item, targets)
        answer = oracle.observe_auction(a, targets)
        usage[x] += 1
        if callback is not None:
            callback(("auction", x, targets.tolist()), answer, work.snapshot())
        return answer

    for i in range(1, n + 1):
        x = i
        while True:
            cand = work.outside(x)
            if ask(x, cand):
                break
            while len(cand) > 1:
                alpha, beta = _halves(cand)
                cand = beta if ask(x, alpha) else alpha
            y = int(cand[0])
            work.merge(x, y)
            x = y
    return LearnResult(work.snapshot(), oracle.query_count - start, per_type_usage=usage)


@dataclass(frozen=True)
class AuctionIGState:
    """Snapshot of the auction learner between draws.

    ``candidates[i - 1]`` is agent ``i``'s pending search set and
    ``wins[i - 1]`` counts draws where ``i`` had the top value.
    """

    structure: CoalitionStructure
    candidates: tuple[frozenset[int], ...]
    wins: tuple[int, ...]
    finalized: frozenset[int]
    top: int = 0

    @property
    def n(self) -> int:
        return self.structure.n


def auction_ig(n: int, oracle: OracleHandle, stream: ValueStream,
               on_iteration: Callable[[AuctionIGState], None] | None = None,
               max_draws: int | None = None) -> LearnResult:
    """Iterative grouping with auctions whose valuations are drawn at random.

    Each draw advances the search of whichever agent values the item most,
    so binary searches for different coalitions interleave. Every draw is
    auctioned and therefore costs one query.
    """
    start = oracle.query_count
    work = _Working(n)
    empty = np.empty(0, dtype=np.int64)
    cand = [empty] * (n + 1)  # index 0 unused
    wins = [0] * (n + 1)
    finalized = np.zeros(n + 1, dtype=bool)
    n_final = 0
    draws = 0

    def ask(v, targets):
        return oracle.observe_auction(auction_gadget(v, targets), targets)

    while n_final < n:
        if max_draws is not None and draws >= max_draws:
            raise RuntimeError(f"auction_ig exceeded {max_draws} draws")
        v = stream.draw()
        draws += 1
        x = int(np.argmax(v)) + 1
        wins[x] += 1
        group = work.coalition(x)
        if cand[x].size == 0:
            rest = work.outside(x)
            if not ask(v, rest):
                for i in group:
                    cand[i] = rest
            else:
                for i in group:
                    if not finalized[i]:
                        finalized[i] = True
                        n_final += 1
        else:
            alpha, beta = _halves(cand[x])
            nxt = beta if ask(v, alpha) else alpha
            for i in group:
                cand[i] = nxt
        if cand[x].size == 1:
            work.merge(x, int(cand[x][0]))
            for i in work.coalition(x):
                cand[i] = empty
        if on_iteration is not None:
            on_iteration(AuctionIGState(
                work.snapshot(),
                tuple(frozenset(int(j) for j in c) for c in cand[1:]),
                tuple(wins[1:]),
                frozenset(int(i) for i in np.flatnonzero(finalized)),
                top=x,
            ))
    return LearnResult(work.snapshot(), oracle.query_count - start, draws=draws)


def _f(cands: frozenset, n: int) -> int:
    return ceil_log2(n) + 1 if not cands else ceil_log2(len(cands))


def potential(i: int, state: AuctionIGState, truth: CoalitionStructure) -> int:
    """Progress measure for agent ``i``'s true coalition.

    One ``ceil(log2 n)`` per working block inside the true coalition plus
    the remaining binary-search depth of each such block.
    """
    n = state.n
    reps = {state.structure.block_of(j) for j in truth.coalition(i)}
    return ceil_log2(n) * len(reps) + sum(_f(state.candidates[b - 1], n) for b in reps)


def state_violations(state: AuctionIGState, truth: CoalitionStructure) -> list[str]:
    """Check the four learner-state invariants against the ground truth."""
    out = []
    S = state.structure
    for i in range(1, state.n + 1):
        mine, true = S.coalition(i), truth.coalition(i)
        if not mine <= true:
            out.append(f"(a) block of {i} not inside its true coalition")
        if i in state.finalized and mine != true:
            out.append(f"(b) finalized agent {i} has an incomplete block")
        if any(state.candidates[j - 1] != state.candidates[i - 1] for j in mine):
            out.append(f"(c) candidate sets differ inside block of {i}")
        c = state.candidates[i - 1]
        if c and not c & (true - mine):
            out.append(f"(d) candidate set of {i} holds no missing partner")
    return out
