#!/usr/bin/env python3
"""Regenerate the standard experiment datasets into an output directory.

Produces the fidelity, survival, correlation, phase-sweep and gate-report
CSV/text files for the four-site model at the usual parameter points
(epsilon = 1 throughout).  Each run also leaves a .manifest.json beside its
output.

Usage:
    python scripts/reproduce_figures.py [--outdir out]
"""

import argparse
import sys
from pathlib import Path

from agassi_sim.cli import main as cli


def run(outdir: Path) -> int:
    jobs = [
        # exact-vs-digital fidelity traces at n_T = 10, long and short windows
        ["fidelity-time", "--g", "1", "--v", "1", "--nt", "10", "--tf", "5",
         "--samples", "501", "--out", str(outdir / "fidelity_time_long.csv")],
        ["fidelity-time", "--g", "1", "--v", "1", "--nt", "10", "--tf", "1",
         "--samples", "201", "--out", str(outdir / "fidelity_time_short.csv")],
        # fidelity against step count at the two window endpoints
        ["fidelity-steps", "--g", "1", "--v", "1", "--nt", "30", "--tf", "5",
         "--out", str(outdir / "fidelity_steps_long.csv")],
        ["fidelity-steps", "--g", "1", "--v", "1", "--nt", "30", "--tf", "1",
         "--out", str(outdir / "fidelity_steps_short.csv")],
        # survival probability on both sides of the critical point
        ["survival", "--g", "0.5", "--v", "0.5", "--samples", "501",
         "--out", str(outdir / "survival_g05.csv")],
        ["survival", "--g", "1", "--v", "1", "--samples", "501",
         "--out", str(outdir / "survival_g10.csv")],
        # correlation traces, exact line plus n_T = 5 digital curve
        ["correlation", "--g", "0.5", "--v", "0", "--nt", "5", "--samples", "501",
         "--out", str(outdir / "correlation_sp.csv")],
        ["correlation", "--g", "0.4", "--v", "0.4", "--nt", "5", "--samples", "501",
         "--out", str(outdir / "correlation_near_critical.csv")],
        ["correlation", "--g", "0.5", "--v", "1", "--nt", "5", "--samples", "501",
         "--out", str(outdir / "correlation_bsp.csv")],
        # oscillation amplitude across the g = V line
        ["phase-sweep", "--sweep-points", "101",
         "--out", str(outdir / "phase_sweep.csv")],
        # native-gate cost report at n_T = 5
        ["compile-report", "--g", "1", "--v", "1", "--nt", "5",
         "--out", str(outdir / "compile_report.txt")],
    ]
    for job in jobs:
        code = cli(job)
        if code != 0:
            print(f"job failed ({code}): {' '.join(job)}", file=sys.stderr)
            return code
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("out"))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    sys.exit(run(args.outdir))
