#!/usr/bin/env python3
"""Sweep the distortion-region boundary against the per-receiver floors.

For a two-receiver scenario file, traces the minimal feasible D_2 over a
D_1 grid at several bandwidth factors and writes one CSV per factor with
columns D1, D2_min, D2_trivial, gap.  The gap column shows where the
schedule-indexed bound actually bites beyond the point-to-point floors:
nowhere for b <= 1, and in a neighbourhood of the trivial point for b > 1.
"""

import argparse
import csv
import math
from pathlib import Path

from gbcbound.core import load_scenario, trivial_distortion, validate_scenario
from gbcbound.errors import InfeasibleEverywhere
from gbcbound.membership import trace_boundary


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", required=True, help="two-receiver scenario JSON")
    parser.add_argument("--bandwidths", default="0.5,1,2,4", help="comma list of b values")
    parser.add_argument("--points", type=int, default=40, help="D_1 grid points")
    parser.add_argument("--out", default="out/boundary_sweep", help="output directory")
    args = parser.parse_args()

    base = load_scenario(args.scenario)
    if base.num_receivers != 2:
        parser.error("need a two-receiver scenario")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    for b in (float(x) for x in args.bandwidths.split(",")):
        sc = validate_scenario(base.power, base.noises, b, base.source_var)
        d1_star = trivial_distortion(sc, 1)
        d2_star = trivial_distortion(sc, 2)
        path = outdir / f"gaps_b{b!r}.csv"
        max_gap = 0.0
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["D1", "D2_min", "D2_trivial", "gap"])
            for i in range(args.points):
                d1 = d1_star + (sc.source_var - d1_star) * i / (args.points - 1)
                try:
                    d2_min = trace_boundary(sc, (d1,))
                except InfeasibleEverywhere:
                    writer.writerow([repr(d1), "nan", repr(d2_star), "nan"])
                    continue
                gap = d2_min - d2_star
                max_gap = max(max_gap, gap)
                writer.writerow([repr(d1), repr(d2_min), repr(d2_star), repr(gap)])
        print(f"b={b}: wrote {path} (max gap {max_gap:.3e})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
