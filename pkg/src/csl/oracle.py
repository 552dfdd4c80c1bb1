"""One-bit equilibrium oracle backed by a hidden coalition structure.

Coalition members pool their utilities and deviate jointly. The oracle
answers whether nobody wants to leave the default profile of a game.
The analytic answers rely on the gadget characterizations; the
``brute_force_*`` checkers search deviations directly and serve as
independent references.
"""
from __future__ import annotations

import itertools
import json
from typing import IO, Callable, Iterable

import numpy as np

from .gadgets import (
    AuctionInstance,
    GadgetProduct,
    GameStrategyPair,
    as_agents,
    auction_gadget,
    top_two,
)
from .partition import CoalitionStructure, UnsupportedSize

BRUTE_FORCE_CAP = 10**6
MODES = ("analytic", "brute-force")


def brute_force_ne(game: GameStrategyPair, structure: CoalitionStructure,
                   cap: int = BRUTE_FORCE_CAP) -> bool:
    """Whether no coalition gains from a joint pure deviation off the default.

    Expected utility is multilinear in mixed strategies, so checking pure
    joint deviations is enough.
    """
    if structure.n != game.n:
        raise ValueError("game and structure disagree on n")
    if game.joint_size() > cap:
        raise UnsupportedSize(f"joint action space {game.joint_size()} exceeds cap {cap}")
    default = list(game.default)
    base = game.utility(default)
    for block in structure:
        movers = [i for i in sorted(block) if len(game.actions[i - 1]) > 1]
        if not movers:
            continue
        members = [i - 1 for i in block]
        base_sum = sum(base[i] for i in members)
        for combo in itertools.product(*(game.actions[i - 1] for i in movers)):
            profile = list(default)
            for i, a in zip(movers, combo):
                profile[i - 1] = a
            u = game.utility(profile)
            if sum(u[i] for i in members) > base_sum:
                return False
    return True


def brute_force_auction_ne(auction: AuctionInstance, structure: CoalitionStructure) -> bool:
    """Whether truthful bidding survives every coalition's joint deviation.

    With non-members truthful, a coalition only chooses which member (if
    any) wins. Member ``j`` wins at price ``max(r_j, best outside bid)``
    and the item goes to the member who values it most. Ties in bids go
    to the lowest-numbered agent; a winner accepts at zero surplus.
    """
    if structure.n != auction.n:
        raise ValueError("auction and structure disagree on n")
    v, r, b = auction.values.tolist(), auction.reserves.tolist(), auction.bids.tolist()
    order = sorted(range(len(b)), key=lambda i: (-b[i], i))
    winner = order[0]
    price = max(r[winner], b[order[1]] if len(order) > 1 else 0.0)
    for block in structure:
        inside = {i - 1 for i in block}
        best_value = max(v[i] for i in inside)
        truthful = max(0.0, best_value - price) if winner in inside else 0.0
        outside_bid = next((b[i] for i in order if i not in inside), 0.0)
        cheapest = min(max(r[j], outside_bid) for j in inside)
        if max(0.0, best_value - cheapest) > truthful:
            return False
    return True


class OracleHandle:
    """Learner-facing oracle. Counts every observation; hides the truth."""

    def __init__(self, truth: CoalitionStructure, mode: str = "analytic",
                 trace: IO[str] | Callable[[dict], None] | None = None,
                 brute_cap: int = BRUTE_FORCE_CAP):
        if mode not in MODES:
            raise ValueError(f"unknown oracle mode {mode!r}")
        self.__truth = truth
        self._labels = np.asarray(truth.labels)
        self._label_list = list(truth.labels)
        self.mode = mode
        self.brute_cap = brute_cap
        self._trace = trace
        self._count = 0

    @property
    def n(self) -> int:
        return len(self._label_list)

    @property
    def query_count(self) -> int:
        return self._count

    def observe_product(self, g: GadgetProduct) -> bool:
        if g.n != self.n:
            raise ValueError("gadget built for a different number of agents")
        if not g.pairs:
            raise ValueError("empty gadget products are never queried")
        if self.mode == "analytic":
            lab = self._label_list
            answer = all(lab[x - 1] != lab[y - 1] for x, y in g.pairs)
        else:
            answer = brute_force_ne(g.expand(), self.__truth, self.brute_cap)
        self._record(lambda: {"kind": "product", **g.describe()}, answer)
        return answer

    def observe_auction(self, auction: AuctionInstance, targets: Iterable[int]) -> bool:
        if auction.n != self.n:
            raise ValueError("auction built for a different number of agents")
        targets = as_agents(targets)
        if auction.targets is not None:
            if not np.array_equal(auction.targets, targets):
                raise ValueError("auction was built for a different target set")
            top = auction.top
        else:
            top, _, _ = top_two(auction.values)
            expected = auction_gadget(auction.values, targets)
            if not np.array_equal(expected.reserves, auction.reserves):
                raise ValueError("auction reserves do not match the gadget for these targets")
        if self.mode == "analytic":
            answer = not bool(np.any(self._labels[targets - 1] == self._labels[top - 1]))
        else:
            answer = brute_force_auction_ne(auction, self.__truth)
        self._record(lambda: {"kind": "auction", "top": top, "targets": targets.tolist()}, answer)
        return answer

    def _record(self, describe: Callable[[], dict], answer: bool) -> None:
        self._count += 1
        if self._trace is None:
            return
        entry = {"query": self._count, **describe(), "answer": answer}
        if callable(self._trace):
            self._trace(entry)
        else:
            self._trace.write(json.dumps(entry) + "\n")


class ValueStream:
    """Seeded stream of i.i.d. ``U[0, 1]^n`` valuation vectors.

    Vectors whose maximum is not unique are discarded before being
    presented, so ``draws`` counts only usable items.
    """

    def __init__(self, n: int, seed=None):
        self.n = n
        self._rng = np.random.default_rng(seed)
        self.draws = 0

    def draw(self) -> np.ndarray:
        while True:
            v = self._rng.random(self.n)
            if np.count_nonzero(v == v.max()) == 1:
                self.draws += 1
                return v


def draw_values(stream: ValueStream) -> np.ndarray:
    return stream.draw()
