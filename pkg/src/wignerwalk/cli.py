"""Command-line front end.

    wignerwalk evolve   --n 101 --kind dod --delta 0.5 --r 1000 --times 1,10,40
    wignerwalk longtime --n 100 --kind dod --delta 0.025 --r 1000
    wignerwalk ensemble ...      (snapshots and long-time grid in one sweep)
    wignerwalk render grid.csv   (PPM heatmap of a written grid)
    wignerwalk verify   --n 21 --kind dd --delta 0.25 --r 20

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .ensemble import EnsembleSpec, run_ensemble, verify_interchange
from .io import read_grid_csv, render_heatmap, write_grid_csv
from .model import MAX_DELTA, DisorderKind
from .wigner import PhaseSpaceGrid

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
INTERCHANGE_TOL = 1e-12
DEFAULT_TIMES = "1,10,20,40,100,500"
SUBCOMMANDS = ("evolve", "longtime", "ensemble", "render", "verify")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int = 101
    j: int | None = None
    kind: DisorderKind = DisorderKind.DOD
    delta: float = 0.0
    r: int = 1000
    base_seed: int = 0
    times: tuple[float, ...] = ()
    eps_deg: float | None = None
    output_dir: Path | None = Path(".")
    image: bool = False
    zoom: int = 4
    workers: int | None = None
    allow_large_delta: bool = False
    quiet: bool = False
    inputs: list[Path] = field(default_factory=list)
    window: float = 100.0
    samples: int = 200

    def spec(self) -> EnsembleSpec:
        return EnsembleSpec(n=self.n, j=self.j, kind=self.kind, delta=self.delta, r=self.r,
                            base_seed=self.base_seed, times=self.times, eps_deg=self.eps_deg,
                            allow_large=self.allow_large_delta)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _times(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid time list {text!r}") from None
    if not values or any(t < 0 for t in values):
        raise argparse.ArgumentTypeError("times must be a non-empty list of values >= 0")
    return values


def _kind(text: str) -> DisorderKind:
    try:
        return DisorderKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wignerwalk", description=__doc__.split("\n\n")[0])
    subs = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def model_args(p, n=101, r=1000):
        p.add_argument("--n", type=int, default=n, help="ring size (>= 3)")
        p.add_argument("--j", type=int, default=None, help="source node (default N//2)")
        p.add_argument("--kind", type=_kind, default=DisorderKind.DOD,
                       help="disorder: none, dd, dod, cdod (constrained DOD)")
        p.add_argument("--delta", type=float, default=0.0, help=f"strength in [0, {MAX_DELTA}]")
        p.add_argument("--allow-large-delta", action="store_true",
                       help=f"permit strengths above {MAX_DELTA} (warns)")
        p.add_argument("--r", type=_positive, default=r, help="number of realizations")
        p.add_argument("--seed", dest="base_seed", type=int, default=0,
                       help="base seed; realization r uses seed + r")
        p.add_argument("--eps-deg", type=float, default=None,
                       help="degeneracy tolerance (default 1e-9 * spectral range)")
        p.add_argument("--workers", type=_positive, default=None)
        p.add_argument("--quiet", action="store_true")

    def output_args(p):
        p.add_argument("--output-dir", type=Path, default=Path("."))
        p.add_argument("--image", action="store_true", help="also write PPM heatmaps")
        p.add_argument("--zoom", type=_positive, default=4)

    for name, helptext in (("evolve", "ensemble-averaged snapshots at given times"),
                           ("longtime", "ensemble-averaged exact long-time grid"),
                           ("ensemble", "snapshots and long-time grid from one sweep")):
        p = subs.add_parser(name, help=helptext)
        model_args(p)
        output_args(p)
        if name != "longtime":
            p.add_argument("--times", type=_times, default=_times(DEFAULT_TIMES))

    p = subs.add_parser("render", help="PPM heatmaps of written CSV grids")
    p.add_argument("inputs", type=Path, nargs="+")
    p.add_argument("--output-dir", type=Path, default=None)
    p.add_argument("--zoom", type=_positive, default=4)

    p = subs.add_parser("verify", help="check that time and ensemble averages interchange")
    model_args(p, n=21, r=20)
    p.add_argument("--T", dest="window", type=float, default=100.0)
    p.add_argument("--samples", type=int, default=200)
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(ns))
    if cfg.subcommand == "render":
        return cfg
    if cfg.n < 3:
        raise UsageError(f"--n must be >= 3, got {cfg.n}")
    if cfg.delta < 0 or (cfg.delta > MAX_DELTA and not cfg.allow_large_delta):
        raise UsageError(f"--delta must lie in [0, {MAX_DELTA}], got {cfg.delta}")
    if cfg.delta > MAX_DELTA:
        warnings.warn(f"disorder strength {cfg.delta} lies outside the studied range "
                      f"[0, {MAX_DELTA}]", stacklevel=2)
    if cfg.j is not None and not 0 <= cfg.j < cfg.n:
        raise UsageError(f"--j must lie in [0, {cfg.n - 1}], got {cfg.j}")
    if cfg.subcommand == "verify" and cfg.samples < 2:
        raise UsageError("--samples must be >= 2")
    return cfg


def _num(x: float) -> str:
    return f"{x:g}"


def grid_filename(cfg: RunConfig, time: float | None, suffix: str = ".csv") -> str:
    n = cfg.n
    j = n // 2 if cfg.j is None else cfg.j
    when = "longtime" if time is None else f"t{_num(time)}"
    return (f"{cfg.subcommand}_{cfg.kind.value}_d{_num(cfg.delta)}_N{n}_j{j}_{when}"
            f"_R{cfg.r}_s{cfg.base_seed}{suffix}")


def _progress(quiet: bool):
    if quiet:
        return None

    def report(done, total):
        if done == total or done % max(1, total // 20) == 0:
            print(f"\r{done}/{total} realizations", end="\n" if done == total else "",
                  file=sys.stderr, flush=True)
    return report


def _write(cfg: RunConfig, key: float | None, grid: PhaseSpaceGrid) -> list[Path]:
    paths = [cfg.output_dir / grid_filename(cfg, key)]
    write_grid_csv(grid, paths[0])
    if cfg.image:
        paths.append(cfg.output_dir / grid_filename(cfg, key, ".ppm"))
        render_heatmap(grid, paths[1], cfg.zoom)
    return paths


def run(cfg: RunConfig) -> int:
    if cfg.subcommand == "render":
        for src in cfg.inputs:
            out_dir = cfg.output_dir or src.parent
            out_dir.mkdir(parents=True, exist_ok=True)
            render_heatmap(read_grid_csv(src), out_dir / (src.stem + ".ppm"), cfg.zoom)
        return EXIT_OK

    spec = cfg.spec()
    progress = _progress(cfg.quiet)

    if cfg.subcommand == "verify":
        report = verify_interchange(spec, cfg.window, cfg.samples)
        ok = report["max_dev"] <= INTERCHANGE_TOL
        print(f"max_dev={report['max_dev']:.3e} tol={INTERCHANGE_TOL:g} "
              f"{'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_RUNTIME

    times = () if cfg.subcommand == "longtime" else cfg.times
    longtime = cfg.subcommand in ("longtime", "ensemble")
    result = run_ensemble(spec, times, longtime, cfg.workers, progress)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    for key, grid in result.grids.items():
        for path in _write(cfg, key, grid):
            if not cfg.quiet:
                print(path)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return run(cfg)
    except Exception as exc:
        print(f"wignerwalk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
