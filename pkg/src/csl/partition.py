"""Coalition structures over agents ``1..n``.

A :class:`CoalitionStructure` is an immutable partition. Every block is
labelled by its smallest member, so two structures describing the same
partition compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

BELL_CAP = 300


class UnsupportedSize(ValueError):
    """Raised when a request exceeds a configured size cap."""


@dataclass(frozen=True)
class CoalitionStructure:
    """A partition of ``{1, ..., n}`` into nonempty coalitions.

    ``labels[i - 1]`` is the block id of agent ``i``; block ids are the
    smallest agent in the block.
    """

    labels: tuple[int, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("a coalition structure needs at least one agent")
        for i, b in enumerate(self.labels, start=1):
            if not 1 <= b <= i or self.labels[b - 1] != b:
                raise ValueError(f"labels are not canonical at agent {i}")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> CoalitionStructure:
        blocks = [sorted(set(b)) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("coalitions must be nonempty")
        members = [i for b in blocks for i in b]
        if n is None:
            n = max(members, default=0)
        if sorted(members) != list(range(1, n + 1)):
            raise ValueError("blocks must be disjoint and cover 1..n")
        labels = [0] * n
        for b in blocks:
            for i in b:
                labels[i - 1] = b[0]
        return cls(tuple(labels))

    @classmethod
    def from_labels(cls, labels: Iterable) -> CoalitionStructure:
        """Canonicalize arbitrary per-agent block tags."""
        first: dict = {}
        out = []
        for i, tag in enumerate(labels, start=1):
            out.append(first.setdefault(tag, i))
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @cached_property
    def blocks(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {}
        for i, b in enumerate(self.labels, start=1):
            out.setdefault(b, set()).add(i)
        return {b: frozenset(s) for b, s in out.items()}

    def block_of(self, i: int) -> int:
        self._check_agent(i)
        return self.labels[i - 1]

    def coalition(self, i: int) -> frozenset[int]:
        return self.blocks[self.block_of(i)]

    def same_coalition(self, i: int, j: int) -> bool:
        return self.block_of(i) == self.block_of(j)

    def merge(self, i: int, j: int) -> CoalitionStructure:
        """Return the structure with the coalitions of ``i`` and ``j`` joined."""
        a, b = self.block_of(i), self.block_of(j)
        if a == b:
            raise ValueError(f"agents {i} and {j} are already in the same coalition")
        keep, drop = min(a, b), max(a, b)
        return CoalitionStructure(tuple(keep if x == drop else x for x in self.labels))

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.blocks[b] for b in sorted(self.blocks))

    def __str__(self) -> str:
        return "|".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self)

    def _check_agent(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"agent {i} outside 1..{self.n}")


def singletons(n: int) -> CoalitionStructure:
    if n < 1:
        raise ValueError("n must be positive")
    return CoalitionStructure(tuple(range(1, n + 1)))


def random_structure(n: int, m: int, seed=None) -> CoalitionStructure:
    """Random partition of ``1..n`` into exactly ``m`` coalitions.

    Agents ``1..m`` seed one block each, the rest join a uniform block,
    then agent labels are shuffled. ``seed`` may be an int, a
    ``SeedSequence`` or a ``Generator``.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    tags = np.concatenate([np.arange(m), rng.integers(0, m, size=n - m)])
    perm = rng.permutation(n)
    return CoalitionStructure.from_labels(tags[perm].tolist())


def bell_numbers(n: int) -> list[int]:
    """Exact Bell numbers ``B_0..B_n`` via the Bell triangle."""
    bells = [1]
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
        bells.append(row[0])
    return bells


def ceil_log2(x: int) -> int:
    """``ceil(log2(x))`` for a positive integer, exact for big ints."""
    if x < 1:
        raise ValueError("x must be positive")
    return (x - 1).bit_length()


def bell_log2_lower_bound(n: int, cap: int = BELL_CAP) -> int:
    """Information-theoretic minimum number of one-bit queries: ``ceil(log2 B_n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise UnsupportedSize(f"n={n} exceeds the Bell-number cap {cap}")
    return ceil_log2(bell_numbers(n)[n])


def all_partitions(n: int) -> Iterator[CoalitionStructure]:
    """Enumerate every partition of ``1..n`` via restricted growth strings."""
    if n < 1:
        raise ValueError("n must be positive")

    def grow(prefix: list[int], top: int):
        if len(prefix) == n:
            yield CoalitionStructure.from_labels(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    yield from grow([0], 0)

