"""Command line entry point: ``csl run``, ``csl bounds``, ``csl verify``."""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import verify
from .partition import BELL_CAP
from .bench import (
    ALGORITHMS,
    BOUND_KINDS,
    MSpec,
    SweepConfig,
    bound_curve,
    bound_points,
    emit_bounds,
    emit_csv,
    run_sweep,
)

DEFAULT_BOUNDS = {
    "ig": ("lower", "ig"),
    "graphical-ig": ("lower", "ig"),
    "ig-congestion": ("lower", "ig"),
    "daig": ("lower", "ig"),
    "auction-ig": ("auction_m1", "auction_mn", "auction_general"),
}


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _violations(records) -> list[str]:
    out = []
    for r in records:
        if not r.correct:
            out.append(f"run {r.run_id}: wrong structure (n={r.n}, m={r.m}, seed={r.seed})")
        if r.algorithm != "auction-ig" and r.n >= 2 and r.samples > bound_curve("ig", r.n):
            out.append(f"run {r.run_id}: {r.samples} samples exceed n log2 n + 3n")
        if r.max_type_usage is not None and r.max_type_usage > math.log2(r.n) + 3:
            out.append(f"run {r.run_id}: item type used {r.max_type_usage} times")
        if r.algorithm == "auction-ig" and r.m == 1 and r.n >= 2 \
                and r.samples > bound_curve("auction_m1", r.n):
            out.append(f"run {r.run_id}: {r.samples} draws exceed 2n log2 n + 4n")
    return out


def cmd_run(args) -> int:
    cfg = SweepConfig(
        algorithm=args.algorithm,
        n_values=_int_list(args.n),
        m_spec=MSpec.parse(args.m),
        runs=args.runs,
        master_seed=args.seed,
        oracle_mode="brute-force" if args.oracle == "brute" else "analytic",
    )
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"csl run: {exc}", file=sys.stderr)
        return 2
    if args.trace:
        with open(args.trace, "w") as trace:
            records = run_sweep(cfg, trace=trace)
    else:
        records = run_sweep(cfg)
    ns = [n for n in cfg.n_values if n >= 2]
    points = [p for kind in DEFAULT_BOUNDS[cfg.algorithm]
              for p in bound_points([kind], [n for n in ns if kind != "lower" or n <= BELL_CAP])]
    emit_csv(records, args.out, points)
    problems = _violations(records)
    for p in problems:
        print(p, file=sys.stderr)
    ok = sum(r.correct for r in records)
    print(f"{len(records)} runs, {ok} correct, written to {args.out}")
    return 1 if problems else 0


def cmd_bounds(args) -> int:
    kinds = args.kind.split(",")
    for k in kinds:
        if k not in BOUND_KINDS:
            print(f"csl bounds: unknown kind {k!r}", file=sys.stderr)
            return 2
    points = bound_points(kinds, _int_list(args.n))
    emit_bounds(points, args.out)
    for p in points:
        print(f"{p.kind}\t{p.n}\t{p.value:.4f}")
    return 0


def cmd_verify(args) -> int:
    reports = verify.run_all(quick=args.quick)
    for rep in reports:
        print(rep.line())
        for msg in rep.failures:
            print("   ", msg)
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="seeded sweep of one learner")
    run.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    run.add_argument("--n", required=True, help="comma-separated agent counts")
    run.add_argument("--m", required=True, help="int, prop:<frac>, or uniform")
    run.add_argument("--runs", type=int, default=100)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--oracle", choices=("analytic", "brute"), default="analytic")
    run.add_argument("--out", type=Path, required=True)
    run.add_argument("--trace", type=Path)
    run.set_defaults(func=cmd_run)

    bounds = sub.add_parser("bounds", help="evaluate bound curves")
    bounds.add_argument("--kind", required=True, help=f"comma-separated, from {', '.join(BOUND_KINDS)}")
    bounds.add_argument("--n", required=True)
    bounds.add_argument("--out", type=Path, required=True)
    bounds.set_defaults(func=cmd_bounds)

    ver = sub.add_parser("verify", help="exhaustive small-n oracle and gadget checks")
    ver.add_argument("--quick", action="store_true", help="n <= 5 and fewer draws")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"csl: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"csl: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
