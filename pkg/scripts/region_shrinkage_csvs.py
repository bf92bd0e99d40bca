#!/usr/bin/env python3
"""Reproduce the fixed-capacity region family and its strict nesting.

Holds the two point-to-point capacities fixed (default C_1 = 1, C_2 = 5
bits) while the bandwidth factor varies, emits one boundary CSV per
factor plus a nesting summary, and prints the containment verdicts.
Thin wrapper over the ``figure1`` CLI command, so the outputs carry the
usual manifest and are byte-reproducible.
"""

import argparse
import json
from pathlib import Path

from gbcbound.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--c1", type=float, default=1.0)
    parser.add_argument("--c2", type=float, default=5.0)
    parser.add_argument("--bandwidths", default="0.5,1,2")
    parser.add_argument("--samples", type=int, default=512)
    parser.add_argument("--out", default="out/region_shrinkage")
    args = parser.parse_args()

    code = cli_main(
        [
            "figure1",
            "--c1", str(args.c1),
            "--c2", str(args.c2),
            "--b", args.bandwidths,
            "--samples", str(args.samples),
            "--out", args.out,
        ]
    )
    if code != 0:
        return code
    summary = json.loads((Path(args.out) / "figure1_summary.json").read_text())
    for step in summary["nesting"]:
        verdict = "strictly inside" if step["contained"] and step["strict"] else "NOT NESTED"
        print(f"region at b={step['b_inner']} is {verdict} region at b={step['b_outer']}")
    return 0 if summary["all_nested"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
