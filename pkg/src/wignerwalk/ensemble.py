"""Disorder ensembles of Wigner grids.

Realization ``r`` (0-based) of a sweep uses seed ``base_seed + r``. Every
realization is an independent task; results are folded into compensated
running sums strictly in realization order, so the output does not depend
on how many workers produced it.
"""
from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator

import numpy as np
from threadpoolctl import threadpool_limits

from .model import DisorderKind, DisorderRealization, build_h0, build_hamiltonian, \
    check_delta, check_ring_size, sample_disorder
from .spectral import eigendecompose
from .wigner import GridMeta, PhaseSpaceGrid, finite_time_average, trapezoid_weights, \
    wigner_at, wigner_longtime

LONGTIME = None  # key of the long-time grid in EnsembleResult.grids
THREADS_ENV = "WIGNERWALK_THREADS"

Progress = Callable[[int, int], None]


class EnsembleError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnsembleSpec:
    n: int
    j: int | None = None
    kind: DisorderKind = DisorderKind.DOD
    delta: float = 0.0
    r: int = 1000
    base_seed: int = 0
    times: tuple[float, ...] = ()
    eps_deg: float | None = None
    allow_large: bool = False

    def __post_init__(self):
        n = check_ring_size(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "j", n // 2 if self.j is None else int(self.j))
        object.__setattr__(self, "kind", DisorderKind.parse(self.kind))
        object.__setattr__(self, "delta", check_delta(self.delta, self.allow_large))
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        if not 0 <= self.j < n:
            raise ValueError(f"source node {self.j} outside ring of {n} sites")
        if self.r < 1:
            raise ValueError(f"need at least one realization, got r={self.r}")
        if any(t < 0 for t in self.times):
            raise ValueError("times must be non-negative")

    @property
    def trivial(self) -> bool:
        """All realizations coincide with the unperturbed ring."""
        return self.kind is DisorderKind.NONE or self.delta == 0.0

    def seed(self, r: int) -> int:
        return (self.base_seed + r) % (1 << 64)

    def realization(self, r: int) -> DisorderRealization:
        if self.kind is DisorderKind.NONE:
            return DisorderRealization.zero(self.n, self.seed(r))
        return sample_disorder(self.n, self.kind, self.delta, self.seed(r), self.allow_large)

    def hamiltonian(self, r: int) -> np.ndarray:
        return build_hamiltonian(build_h0(self.n), self.realization(r))

    def meta(self, time: float | None, r_done: int) -> GridMeta:
        return GridMeta(n=self.n, j=self.j, time=time, kind=self.kind, delta=self.delta,
                        seed=self.base_seed, r=r_done)


class CompensatedSum:
    """Elementwise Neumaier-compensated sum of equally shaped arrays."""

    def __init__(self, shape):
        self.total = np.zeros(shape)
        self.comp = np.zeros(shape)
        self.count = 0

    def add(self, x: np.ndarray) -> None:
        t = self.total + x
        big = np.abs(self.total) >= np.abs(x)
        self.comp += np.where(big, (self.total - t) + x, (x - t) + self.total)
        self.total = t
        self.count += 1

    def value(self) -> np.ndarray:
        return self.total + self.comp

    def mean(self) -> np.ndarray:
        return self.value() / self.count


@dataclass
class EnsembleResult:
    spec: EnsembleSpec
    grids: dict = field(default_factory=dict)
    r_completed: int = 0

    def grid(self, time: float | None = LONGTIME) -> PhaseSpaceGrid:
        return self.grids[time if time is None else float(time)]

    @property
    def longtime(self) -> PhaseSpaceGrid:
        return self.grids[LONGTIME]


def merge_results(parts: list[EnsembleResult]) -> EnsembleResult:
    """Count-weighted mean of partial ensembles over disjoint realizations."""
    parts = [p for p in parts if p.r_completed]
    if not parts:
        raise ValueError("nothing to merge")
    total = sum(p.r_completed for p in parts)
    out = EnsembleResult(parts[0].spec, r_completed=total)
    for key in parts[0].grids:
        acc = CompensatedSum(parts[0].grids[key].w.shape)
        for p in parts:
            acc.add(p.grids[key].w * p.r_completed)
        out.grids[key] = PhaseSpaceGrid(acc.value() / total,
                                        replace(parts[0].grids[key].meta, r=total))
    return out


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit value, else CPU count, capped by $WIGNERWALK_THREADS."""
    count = workers if workers is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        count = min(count, int(cap))
    return max(1, int(count))


def realization_grids(spec: EnsembleSpec, r: int, times: tuple[float, ...],
                      longtime: bool) -> np.ndarray:
    """Grids of one realization stacked as ``(len(times) + longtime, N, N)``."""
    es = eigendecompose(spec.hamiltonian(r), spec.eps_deg)
    out = [wigner_at(es, spec.j, t).w for t in times]
    if longtime:
        out.append(wigner_longtime(es, spec.j).w)
    return np.stack(out)


def _task(args):
    spec, r, times, longtime = args
    try:
        with threadpool_limits(1):
            return r, realization_grids(spec, r, times, longtime), None
    except Exception as exc:  # reported with the realization index by the reducer
        return r, None, exc


def _init_worker():
    threadpool_limits(1)


def _stream(spec: EnsembleSpec, indices: range, times, longtime, workers: int) -> Iterator:
    jobs = ((spec, r, times, longtime) for r in indices)
    if workers == 1:
        yield from map(_task, jobs)
        return
    window = 4 * workers
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker) as pool:
        pending = deque()
        for job in jobs:
            pending.append(pool.submit(_task, job))
            if len(pending) >= window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def run_ensemble(spec: EnsembleSpec, times: tuple[float, ...] | None = None,
                 longtime: bool = False, workers: int | None = None,
                 progress: Progress | None = None) -> EnsembleResult:
    """Average snapshot grids at ``times`` (and optionally the long-time grid).

    A realization failure aborts the sweep. When the disorder is trivial
    every realization is identical, so one is computed and reported as R.
    """
    times = spec.times if times is None else tuple(float(t) for t in times)
    if not times and not longtime:
        raise ValueError("nothing to compute: no times and no long-time grid")
    keys = list(times) + ([LONGTIME] if longtime else [])
    indices = range(1 if spec.trivial else spec.r)
    acc = CompensatedSum((len(keys), spec.n, spec.n))
    workers = resolve_workers(workers) if len(indices) > 1 else 1

    for done, (r, grids, exc) in enumerate(_stream(spec, indices, times, longtime, workers), 1):
        if exc is not None:
            raise EnsembleError(f"realization {r} (seed {spec.seed(r)}) failed: {exc}") from exc
        acc.add(grids)
        if progress is not None:
            progress(done, len(indices))

    mean = acc.mean()
    result = EnsembleResult(spec, r_completed=spec.r if spec.trivial else acc.count)
    for k, key in enumerate(keys):
        result.grids[key] = PhaseSpaceGrid(mean[k], spec.meta(key, result.r_completed))
    return result


def ensemble_snapshot(spec: EnsembleSpec, workers: int | None = None,
                      progress: Progress | None = None) -> EnsembleResult:
    if not spec.times:
        raise ValueError("snapshot ensemble needs at least one time")
    return run_ensemble(spec, spec.times, False, workers, progress)


def ensemble_longtime(spec: EnsembleSpec, workers: int | None = None,
                      progress: Progress | None = None) -> EnsembleResult:
    return run_ensemble(spec, (), True, workers, progress)


def verify_interchange(spec: EnsembleSpec, T: float, n_samples: int) -> dict:
    """Compare the two orders of finite-window time and ensemble averages.

    (a) mean over realizations of each realization's trapezoidal time
    average; (b) trapezoidal time average of the ensemble-mean snapshots.
    """
    times = np.linspace(0.0, T, n_samples)
    wts = trapezoid_weights(n_samples)
    n = spec.n
    count = 1 if spec.trivial else spec.r

    time_then_ens = CompensatedSum((n, n))
    per_time = CompensatedSum((n_samples, n, n))
    for r in range(count):
        es = eigendecompose(spec.hamiltonian(r), spec.eps_deg)
        time_then_ens.add(finite_time_average(es, spec.j, T, n_samples).w)
        per_time.add(np.stack([wigner_at(es, spec.j, t).w for t in times]))

    a = time_then_ens.mean()
    b = np.tensordot(wts, per_time.mean(), axes=(0, 0))
    return {"max_dev": float(np.max(np.abs(a - b))), "time_then_ensemble": a,
            "ensemble_then_time": b, "r": count}
