"""Position and momentum marginals of DOD ensembles versus disorder strength.

Prints whitespace-separated columns (one column per strength) for the
snapshot marginals at t = 100 on N = 101 and for the long-time position
marginals on N = 100 and N = 101.
"""
import argparse

import numpy as np

from wignerwalk.ensemble import EnsembleSpec, run_ensemble
from wignerwalk.wigner import marginal_momentum, marginal_position

DELTAS = (1 / 40, 1 / 10, 1 / 4, 1 / 2)


def table(title, columns):
    print(f"# {title}")
    print("# index " + " ".join(f"delta={d:g}" for d in DELTAS))
    for i, row in enumerate(np.column_stack(columns)):
        print(f"{i:4d} " + " ".join(f"{v: .6e}" for v in row))
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--r", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    snaps = [run_ensemble(EnsembleSpec(n=101, kind="dod", delta=d, r=args.r, base_seed=args.seed),
                          times=(100.0,)).grid(100.0) for d in DELTAS]
    table("N=101 t=100 position marginal", [marginal_position(g) for g in snaps])
    table("N=101 t=100 momentum marginal", [marginal_momentum(g) for g in snaps])
    for n in (100, 101):
        grids = [run_ensemble(EnsembleSpec(n=n, kind="dod", delta=d, r=args.r, base_seed=args.seed),
                              longtime=True).longtime for d in DELTAS]
        table(f"N={n} long-time position marginal", [marginal_position(g) for g in grids])


if __name__ == "__main__":
    main()
