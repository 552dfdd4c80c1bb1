#!/usr/bin/env python3
"""Small seeded sweep written to CSV, plus the bound-curve companion file.

Same thing as ``csl run --algorithm ig --n 8,16,32 --m uniform --runs 20 --out ...``.
Any row can be replayed from its seed with ``run_one``.
"""
import sys
import tempfile
from pathlib import Path

from csl.bench import MSpec, SweepConfig, bound_points, emit_csv, run_one, run_sweep

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp()) / "ig.csv"
cfg = SweepConfig("ig", [8, 16, 32], MSpec("uniform"), runs=20, master_seed=5)
recs = run_sweep(cfg)
emit_csv(recs, out, bound_points(["lower", "ig"], cfg.n_values))
print("wrote", out, "and", out.with_name(out.stem + ".bounds.csv"))
print(out.read_text().splitlines()[:4])

row = recs[37]
again = run_one(row.algorithm, row.n, cfg.m_spec, row.seed, row.run_id)
print(f"run {row.run_id} replayed from seed {row.seed}: samples {row.samples} -> {again.samples}")
