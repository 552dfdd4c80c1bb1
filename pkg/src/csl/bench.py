"""Seeded experiment sweeps, bound curves and percentile summaries.

Every run gets its own seed, derived from ``(master_seed, run_id)`` with
``numpy.random.SeedSequence``. The seed is written next to each record,
so :func:`run_one` can replay any row of a sweep on its own.
"""
from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import IO, Callable, Iterable, Optional, Sequence, Union

import numpy as np
from scipy import optimize

from .learners import auction_ig, daig, graphical_ig, ig
from .oracle import OracleHandle, ValueStream
from .partition import bell_log2_lower_bound, random_structure

ALGORITHMS = ("ig", "graphical-ig", "ig-congestion", "daig", "auction-ig")
BOUND_KINDS = ("lower", "ig", "auction_m1", "auction_mn", "auction_general")
CSV_COLUMNS = ("run_id", "algorithm", "n", "m", "seed", "samples", "correct", "wall_time")


@dataclass(frozen=True)
class MSpec:
    """How many coalitions each run gets.

    ``kind`` is ``"fixed"`` (``value`` is m), ``"proportional"`` (``value``
    is a fraction of n, rounded, at least 1) or ``"uniform"`` (m drawn from
    ``{1, ..., n}`` per run).
    """

    kind: str
    value: float = 0

    @classmethod
    def parse(cls, text: str) -> MSpec:
        text = str(text).strip()
        if text == "uniform":
            return cls("uniform")
        if text == "n":
            return cls("proportional", 1.0)
        if text.startswith("prop:"):
            return cls("proportional", float(text[5:]))
        return cls("fixed", int(text))

    def resolve(self, n: int, rng: np.random.Generator) -> int:
        if self.kind == "fixed":
            return int(self.value)
        if self.kind == "proportional":
            return max(1, min(n, round(self.value * n)))
        if self.kind == "uniform":
            return int(rng.integers(1, n + 1))
        raise ValueError(f"unknown m spec {self.kind!r}")


@dataclass
class SweepConfig:
    algorithm: str
    n_values: Sequence[int]
    m_spec: MSpec
    runs: int = 100
    master_seed: int = 0
    oracle_mode: str = "analytic"
    out: Optional[Path] = None

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("every n must be positive")
        if self.oracle_mode not in ("analytic", "brute-force"):
            raise ValueError(f"unknown oracle mode {self.oracle_mode!r}")
        if self.m_spec.kind not in ("fixed", "proportional", "uniform"):
            raise ValueError(f"unknown m spec {self.m_spec.kind!r}")
        if self.m_spec.kind == "fixed":
            if any(not 1 <= self.m_spec.value <= n for n in self.n_values):
                raise ValueError("fixed m must lie in 1..n for every n")
        elif self.m_spec.kind == "proportional" and not 0 < self.m_spec.value <= 1:
            raise ValueError("proportional m needs a fraction in (0, 1]")


@dataclass
class RunRecord:
    run_id: int
    algorithm: str
    n: int
    m: int
    seed: int
    samples: int
    correct: bool
    wall_time: float
    max_type_usage: Optional[int] = field(default=None, compare=False)


def run_seed(master_seed: int, run_id: int) -> int:
    """Stable 63-bit seed for one run."""
    state = np.random.SeedSequence([master_seed, run_id]).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


def run_one(algorithm: str, n: int, m_spec: MSpec, seed: int, run_id: int = 0,
            oracle_mode: str = "analytic", trace: IO[str] | Callable | None = None) -> RunRecord:
    """Draw a hidden structure from ``seed``, learn it, and score the result."""
    structure_seq, values_seq = np.random.SeedSequence(seed).spawn(2)
    rng = np.random.default_rng(structure_seq)
    m = m_spec.resolve(n, rng)
    truth = random_structure(n, m, rng)
    oracle = OracleHandle(truth, mode=oracle_mode, trace=trace)
    start = time.perf_counter()
    if algorithm == "ig":
        result = ig(n, oracle)
    elif algorithm == "ig-congestion":
        result = ig(n, oracle, flavor="congestion")
    elif algorithm == "graphical-ig":
        result = graphical_ig(n, oracle)
    elif algorithm == "daig":
        result = daig(n, oracle)
    elif algorithm == "auction-ig":
        result = auction_ig(n, oracle, ValueStream(n, values_seq))
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    elapsed = time.perf_counter() - start
    if result.queries != oracle.query_count:
        raise RuntimeError("learner query count disagrees with the oracle")
    usage = max(result.per_type_usage.values()) if result.per_type_usage else None
    return RunRecord(run_id, algorithm, n, m, seed, result.queries,
                     result.structure == truth, elapsed, usage)


def run_sweep(cfg: SweepConfig, trace: IO[str] | None = None) -> list[RunRecord]:
    """``cfg.runs`` runs for every n in ``cfg.n_values``, in run_id order."""
    cfg.validate()
    records = []
    run_id = 0
    for n in cfg.n_values:
        for _ in range(cfg.runs):
            seed = run_seed(cfg.master_seed, run_id)
            sink = None
            if trace is not None:
                rid = run_id
                sink = lambda entry, rid=rid: trace.write(_json_line({"run_id": rid, **entry}))
            records.append(run_one(cfg.algorithm, n, cfg.m_spec, seed, run_id,
                                   cfg.oracle_mode, sink))
            run_id += 1
    if cfg.out is not None:
        emit_csv(records, cfg.out)
    return records


def _json_line(entry: dict) -> str:
    return json.dumps(entry) + "\n"


def harmonic(n: int) -> float:
    return math.fsum(1.0 / k for k in range(1, n + 1))


def auction_alpha(tol: float = 1e-6) -> float:
    """Root in ``(beta, inf)`` of ``a - beta ln a = beta - beta ln beta + 1``, ``beta = 2 / ln 2``."""
    beta = 2 / math.log(2)
    rhs = beta - beta * math.log(beta) + 1

    def g(a):
        return a - beta * math.log(a) - rhs

    hi = 2 * beta
    while g(hi) < 0:
        hi *= 2
    return optimize.bisect(g, beta, hi, xtol=tol)


def bound_curve(kind: str, n: int) -> float:
    """Finite-n sample-complexity formulas for each learner."""
    if n < 2:
        raise ValueError("bound curves need n >= 2")
    log2n = math.log2(n)
    if kind == "lower":
        return float(bell_log2_lower_bound(n))
    if kind == "ig":
        return n * log2n + 3 * n
    if kind == "auction_m1":
        return 2 * n * log2n + 4 * n
    if kind == "auction_mn":
        return n * harmonic(n)
    if kind == "auction_general":
        return auction_alpha() * n * math.log(n)
    raise ValueError(f"unknown bound kind {kind!r}")


@dataclass(frozen=True)
class BoundPoint:
    kind: str
    n: int
    value: float


def bound_points(kinds: Iterable[str], n_values: Iterable[int]) -> list[BoundPoint]:
    n_values = list(n_values)
    return [BoundPoint(k, n, bound_curve(k, n)) for k in kinds for n in n_values]


def percentile(records: Sequence[Union[RunRecord, int]], q: float) -> int:
    """Smallest sample count within which at least a ``q`` fraction of runs finished correctly.

    Plain integers count as correct runs. Raises if too few runs were correct.
    """
    if not records:
        raise ValueError("percentile of no records")
    if not 0 < q <= 1:
        raise ValueError("q must lie in (0, 1]")
    ok = sorted(r if isinstance(r, (int, np.integer)) else r.samples
                for r in records if isinstance(r, (int, np.integer)) or r.correct)
    need = math.ceil(round(q * len(records), 9))
    if need > len(ok):
        raise ValueError(f"only {len(ok)} of {len(records)} runs were correct")
    return int(ok[need - 1])


def emit_csv(records: Sequence[RunRecord], path, bounds: Sequence[BoundPoint] = ()) -> None:
    """Write one row per record; bound points go to ``<stem>.bounds.csv`` alongside."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in records:
                row = asdict(r)
                row["wall_time"] = f"{r.wall_time:.6f}"
                w.writerow([row[c] for c in CSV_COLUMNS])
        if bounds:
            emit_bounds(bounds, path.with_name(path.stem + ".bounds.csv"))
    except OSError as exc:
        raise OSError(f"could not write results to {path}: {exc}") from exc


def emit_bounds(points: Sequence[BoundPoint], path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("kind", "n", "value"))
        for p in points:
            w.writerow((p.kind, p.n, repr(p.value)))
