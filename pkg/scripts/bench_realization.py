"""Time one N = 101 realization and a full R-realization sweep."""
import argparse
import time

from wignerwalk.ensemble import EnsembleSpec, realization_grids, resolve_workers, run_ensemble

TIMES = (1.0, 10.0, 20.0, 40.0, 100.0, 500.0)

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--n", type=int, default=101)
parser.add_argument("--r", type=int, default=1000)
parser.add_argument("--workers", type=int, default=None)
args = parser.parse_args()

spec = EnsembleSpec(n=args.n, kind="dod", delta=0.5, r=args.r, base_seed=1, times=TIMES)
start = time.perf_counter()
for r in range(20):
    realization_grids(spec, r, TIMES, True)
print(f"one realization (eig + {len(TIMES)} snapshots + long-time): "
      f"{(time.perf_counter() - start) / 20 * 1e3:.2f} ms")

start = time.perf_counter()
run_ensemble(spec, TIMES, longtime=True, workers=args.workers)
print(f"R={args.r} sweep with {resolve_workers(args.workers)} workers: "
      f"{time.perf_counter() - start:.1f} s")
