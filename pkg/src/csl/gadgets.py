"""Game-strategy pairs used to probe coalitions.

Normal-form and congestion gadgets are two-player games padded with
dummies; products play several games at once with summed utilities.
Auction gadgets are second-price auctions with personalized reserves.
Payoffs of the finite games are exact (``int`` or ``Fraction``).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

FLAVORS = ("normal-form", "congestion", "graphical")

# Row player x, column player y.
PRISONERS_TABLE = {
    ("C", "C"): (3, 3),
    ("C", "D"): (0, 5),
    ("D", "C"): (5, 0),
    ("D", "D"): (1, 1),
}

# Braess-style network: (tail, head) -> cost as a function of load.
CONGESTION_EDGES: dict[tuple[str, str], Callable[[int], Fraction]] = {
    ("S", "1"): lambda load: Fraction(load),
    ("S", "2"): lambda load: Fraction(5, 2),
    ("1", "2"): lambda load: Fraction(0),
    ("1", "T"): lambda load: Fraction(5, 2),
    ("2", "T"): lambda load: Fraction(load),
}
CONGESTION_PATHS = ("S-1-T", "S-2-T", "S-1-2-T")
CONGESTION_DEFAULT = "S-1-2-T"


class DegenerateValues(ValueError):
    """Valuation vector without a unique maximum."""


@dataclass(frozen=True, eq=False)
class GameStrategyPair:
    """A finite ``n``-player game plus a pure default profile.

    ``actions[i - 1]`` lists agent ``i``'s actions and ``payoff`` maps a
    joint pure action (one entry per agent) to a payoff per agent.
    """

    n: int
    actions: tuple[tuple[Hashable, ...], ...]
    default: tuple
    payoff: Callable[[tuple], tuple]
    label: str = ""

    def __post_init__(self):
        if len(self.actions) != self.n or len(self.default) != self.n:
            raise ValueError("actions and default need one entry per agent")
        for i, (acts, d) in enumerate(zip(self.actions, self.default), start=1):
            if d not in acts:
                raise ValueError(f"default action of agent {i} is not available")

    @property
    def players(self) -> list[int]:
        """Non-dummy agents (more than one action)."""
        return [i for i, acts in enumerate(self.actions, start=1) if len(acts) > 1]

    def utility(self, profile: Sequence) -> tuple:
        return self.payoff(tuple(profile))

    def joint_size(self) -> int:
        size = 1
        for acts in self.actions:
            size *= len(acts)
        return size

    def to_json(self) -> str:
        """Debug dump of the payoff table over non-dummy players."""
        players = self.players
        table = []
        for combo in itertools.product(*(self.actions[i - 1] for i in players)):
            profile = list(self.default)
            for i, a in zip(players, combo):
                profile[i - 1] = a
            u = self.utility(profile)
            table.append({"actions": [repr(a) for a in combo],
                          "payoffs": [str(u[i - 1]) for i in players]})
        return json.dumps({
            "label": self.label,
            "n": self.n,
            "players": players,
            "actions": {i: [repr(a) for a in self.actions[i - 1]] for i in players},
            "default": [repr(a) for a in self.default],
            "table": table,
        })


def _check_pair(n: int, x: int, y: int) -> None:
    if not (1 <= x <= n and 1 <= y <= n):
        raise ValueError(f"agents ({x}, {y}) outside 1..{n}")
    if x == y:
        raise ValueError("a gadget needs two distinct agents")


def _two_player_game(n, x, y, acts, table, default, dummy, label) -> GameStrategyPair:
    actions = [(dummy,)] * n
    actions[x - 1] = acts
    actions[y - 1] = acts
    dflt = [dummy] * n
    dflt[x - 1] = dflt[y - 1] = default
    zero = [0] * n

    def payoff(profile):
        u = list(zero)
        u[x - 1], u[y - 1] = table[profile[x - 1], profile[y - 1]]
        return tuple(u)

    return GameStrategyPair(n, tuple(actions), tuple(dflt), payoff, label)


def normal_form_gadget(n: int, x: int, y: int) -> GameStrategyPair:
    """Prisoner's-dilemma gadget between ``x`` and ``y``; default all-defect."""
    _check_pair(n, x, y)
    return _two_player_game(n, x, y, ("C", "D"), PRISONERS_TABLE, "D", "D", f"N({x},{y})")


def congestion_table() -> dict[tuple[str, str], tuple[Fraction, Fraction]]:
    """Payoffs (negated path costs) for every pair of paths in the network."""
    def edges(path):
        nodes = path.split("-")
        return list(zip(nodes, nodes[1:]))

    table = {}
    for px, py in itertools.product(CONGESTION_PATHS, repeat=2):
        load: dict[tuple[str, str], int] = {}
        for e in edges(px) + edges(py):
            load[e] = load.get(e, 0) + 1
        cost = [sum(CONGESTION_EDGES[e](load[e]) for e in edges(p)) for p in (px, py)]
        table[px, py] = (-cost[0], -cost[1])
    return table


def congestion_gadget(n: int, x: int, y: int) -> GameStrategyPair:
    """Two-commuter routing game; default has both on ``S-1-2-T``."""
    _check_pair(n, x, y)
    return _two_player_game(n, x, y, CONGESTION_PATHS, congestion_table(),
                            CONGESTION_DEFAULT, "idle", f"C({x},{y})")


def product(games: Sequence[GameStrategyPair]) -> GameStrategyPair:
    """Play ``games`` simultaneously: tupled actions, summed utilities."""
    games = list(games)
    if not games:
        raise ValueError("product of an empty list of games")
    n = games[0].n
    if any(g.n != n for g in games):
        raise ValueError("all factors must have the same number of agents")
    actions = tuple(tuple(itertools.product(*(g.actions[i] for g in games))) for i in range(n))
    default = tuple(tuple(g.default[i] for g in games) for i in range(n))
    k = len(games)

    def payoff(profile):
        total = [0] * n
        for t in range(k):
            u = games[t].payoff(tuple(a[t] for a in profile))
            for i in range(n):
                total[i] += u[i]
        return tuple(total)

    return GameStrategyPair(n, actions, default, payoff, " x ".join(g.label for g in games))


@dataclass(frozen=True)
class GadgetProduct:
    """Compact description of a product of pair gadgets.

    ``graphical`` products use normal-form gadgets on a matching, so the
    resulting game has interaction degree one.
    """

    n: int
    flavor: str
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "pairs", tuple((int(x), int(y)) for x, y in self.pairs))
        for x, y in self.pairs:
            _check_pair(self.n, x, y)
        if self.flavor == "graphical":
            ends = [a for p in self.pairs for a in p]
            if len(set(ends)) != len(ends):
                raise ValueError("graphical products must use vertex-disjoint pairs")

    @property
    def k(self) -> int:
        return len(self.pairs)

    def expand(self) -> GameStrategyPair:
        make = congestion_gadget if self.flavor == "congestion" else normal_form_gadget
        return product([make(self.n, x, y) for x, y in self.pairs])

    def describe(self) -> dict:
        return {"flavor": self.flavor, "pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class MatchingSchedule:
    n: int
    matchings: tuple[tuple[tuple[int, int], ...], ...]

    def __len__(self):
        return len(self.matchings)

    def __iter__(self):
        return iter(self.matchings)


def one_factorization(n: int) -> MatchingSchedule:
    """Round-robin (circle method) decomposition of K_n into matchings.

    Odd ``n`` gets a phantom vertex whose edges are dropped, which leaves
    ``n`` near-perfect matchings; even ``n`` gives ``n - 1`` perfect ones.
    """
    if n < 2:
        raise ValueError("one-factorization needs n >= 2")
    size = n + (n % 2)
    ring = list(range(2, size + 1))
    rounds = []
    for _ in range(size - 1):
        circle = [1] + ring
        pairs = []
        for a, b in zip(circle[: size // 2], reversed(circle[size // 2:])):
            if a <= n and b <= n:
                pairs.append((min(a, b), max(a, b)))
        rounds.append(tuple(sorted(pairs)))
        ring = ring[-1:] + ring[:-1]
    return MatchingSchedule(n, tuple(rounds))


@dataclass(frozen=True, eq=False)
class AuctionInstance:
    """Second-price auction with personalized reserves; default bids are truthful.

    Instances made by :func:`auction_gadget` remember the target set and
    the top bidder they were built for.
    """

    values: np.ndarray
    reserves: np.ndarray
    bids: Optional[np.ndarray] = None
    targets: Optional[np.ndarray] = None
    top: Optional[int] = None

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        r = np.array(self.reserves, dtype=float)
        if v.ndim != 1 or v.shape != r.shape or v.size == 0:
            raise ValueError("values and reserves must be equal-length vectors")
        if v.min() < 0 or v.max() > 1 or r.min() < 0 or r.max() > 1:
            raise ValueError("values and reserves must lie in [0, 1]")
        b = v if self.bids is None else np.array(self.bids, dtype=float)
        for arr in (v, r, b):
            arr.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "reserves", r)
        object.__setattr__(self, "bids", b)

    @property
    def n(self) -> int:
        return self.values.size


def top_two(v: np.ndarray) -> tuple[int, float, float]:
    """Index of the unique maximum, the maximum, and the runner-up value.

    With a single agent the runner-up is 0.
    """
    i = int(np.argmax(v))
    vmax = float(v[i])
    if np.count_nonzero(v == vmax) > 1:
        raise DegenerateValues("valuation maximum is not unique")
    if v.size == 1:
        return i + 1, vmax, 0.0
    rest = v.copy()
    rest[i] = -np.inf
    return i + 1, vmax, float(rest.max())


def as_agents(agents: Iterable[int]) -> np.ndarray:
    if isinstance(agents, np.ndarray):
        return agents.astype(np.int64, copy=False)
    return np.fromiter(agents, dtype=np.int64)


def auction_gadget(values, targets: Iterable[int]) -> AuctionInstance:
    """Reserve ``v_smax`` for agents in ``targets``, ``v_max`` for the rest."""
    v = np.asarray(values, dtype=float)
    top, vmax, vsmax = top_two(v)
    idx = as_agents(targets)
    if idx.size and (idx.min() < 1 or idx.max() > v.size):
        raise ValueError("target agents out of range")
    if top in idx:
        raise ValueError(f"targets may not contain the top bidder {top}")
    r = np.full(v.size, vmax)
    r[idx - 1] = vsmax
    idx.setflags(write=False)
    return AuctionInstance(v, r, targets=idx, top=top)


def designed_item(n: int, i: int) -> np.ndarray:
    """Item valued 1 by agent ``i`` and 0 by everyone else."""
    if not 1 <= i <= n:
        raise ValueError(f"agent {i} outside 1..{n}")
    v = np.zeros(n)
    v[i - 1] = 1.0
    return v
