"""Write CSV grids and PPM heatmaps for the figure panels.

    python scripts/reproduce_figures.py --out figures --r 1000

Panels: DD and DOD snapshot ensembles for N = 101 and 100 at six times,
the constrained-DOD t = 500 row, and DOD long-time grids for both ring
sizes. Pixel-level agreement with published figures is not expected
(the original seeds are unknown).
"""
import argparse
import sys
from pathlib import Path

from wignerwalk.cli import main

DELTAS = ("0.025", "0.1", "0.25", "0.5")
TIMES = "1,10,20,40,100,500"


def recipes(r, seed):
    common = f"--r {r} --seed {seed} --image"
    for kind, n in (("dd", 101), ("dd", 100), ("dod", 101)):
        for d in DELTAS:
            yield f"{kind}_N{n}", f"evolve --n {n} --kind {kind} --delta {d} --times {TIMES} {common}"
    for d in DELTAS:
        yield "cdod_N101", f"evolve --n 101 --kind cdod --delta {d} --times 500 {common}"
    for n in (101, 100):
        for d in DELTAS:
            yield f"longtime_N{n}", f"longtime --n {n} --kind dod --delta {d} {common}"


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--r", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--only", default=None, help="restrict to one panel group, e.g. dod_N101")
    args = parser.parse_args(argv)

    for group, cmd in recipes(args.r, args.seed):
        if args.only and group != args.only:
            continue
        print(f"[{group}] wignerwalk {cmd}", file=sys.stderr)
        code = main(cmd.split() + ["--quiet", "--output-dir", str(args.out / group)])
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
