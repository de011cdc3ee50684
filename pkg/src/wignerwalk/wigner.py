"""Discrete Wigner functions on the ring.

Grids are indexed ``w[x, kappa]`` with position along rows and momentum
index (k = 2 pi kappa / N) along columns.

    W_j(x, kappa; t) = 1/N sum_y exp(i k y) <x-y|j;t> <j;t|x+y>

with all site indices taken mod N. The y-sum is an inverse DFT along the
second axis, so a grid costs O(N^2 log N) once the amplitudes are known.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .model import DisorderKind
from .spectral import EigenSystem, propagate

REAL_TOL = 1e-10


class RealnessError(ArithmeticError):
    """The discarded imaginary part of a Wigner grid exceeded tolerance."""


@dataclass(frozen=True)
class GridMeta:
    n: int
    j: int
    time: float | None = None  # None marks a long-time average
    kind: DisorderKind = DisorderKind.NONE
    delta: float = 0.0
    seed: int | None = None
    r: int = 1

    @property
    def longtime(self) -> bool:
        return self.time is None


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    w: np.ndarray
    meta: GridMeta
    imag_residue: float = field(default=0.0)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def with_meta(self, **changes) -> "PhaseSpaceGrid":
        return replace(self, meta=replace(self.meta, **changes))


def _pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    return (x - y) % n, (x + y) % n


def _to_real(c: np.ndarray) -> tuple[np.ndarray, float]:
    # ifft over y supplies both the 1/N and the exp(+i k y) kernel
    w = np.fft.ifft(c, axis=1)
    residue = float(np.max(np.abs(w.imag)))
    if residue > REAL_TOL:
        raise RealnessError(f"Wigner grid imaginary residue {residue:.3e} exceeds {REAL_TOL}")
    return np.ascontiguousarray(w.real), residue


def correlation(amps: np.ndarray) -> np.ndarray:
    """``C[x, y] = a[x-y] * conj(a[x+y])``; extra trailing axes are summed."""
    minus, plus = _pair_indices(amps.shape[0])
    if amps.ndim == 1:
        return amps[minus] * np.conj(amps[plus])
    flat = amps.reshape(amps.shape[0], -1)
    gram = flat @ flat.conj().T
    return gram[minus, plus]


def wigner_snapshot(amps: np.ndarray, j: int = 0, t: float = 0.0,
                    meta: GridMeta | None = None) -> PhaseSpaceGrid:
    """Wigner grid of the pure state with amplitudes ``amps``.

    ``j`` and ``t`` only label the result; ``meta`` overrides them.
    """
    amps = np.asarray(amps, dtype=complex)
    w, residue = _to_real(correlation(amps))
    return PhaseSpaceGrid(w, meta or GridMeta(n=amps.shape[0], j=j, time=float(t)), residue)


def wigner_at(es: EigenSystem, j: int, t: float, meta: GridMeta | None = None) -> PhaseSpaceGrid:
    return wigner_snapshot(propagate(es, j, t), j, t, meta)


def wigner_bloch(n: int, j: int, t: float) -> PhaseSpaceGrid:
    """Closed-form Wigner function of the unperturbed ring (Bloch ansatz).

    Evaluated term by term, independently of any eigensolver.
    """
    x = np.arange(n)[:, None, None]
    kappa = np.arange(n)[None, :, None]
    m = np.arange(n)[None, None, :]
    phase = -2j * np.pi * (2 * m + kappa) * (x - j) / n
    energy = -2j * t * (np.cos(2 * np.pi * (kappa + m) / n) - np.cos(2 * np.pi * m / n))
    total = np.exp(phase + energy).sum(axis=2) / n**2
    return PhaseSpaceGrid(np.ascontiguousarray(total.real), GridMeta(n=n, j=j, time=float(t)),
                          float(np.max(np.abs(total.imag))))


def group_amplitudes(es: EigenSystem, j: int) -> np.ndarray:
    """Columns ``A_g(z) = sum_{theta in g} <z|Phi_theta><Phi_theta|j>``."""
    proj = es.vectors * es.vectors[j]
    out = np.empty((es.n, len(es.groups)), dtype=proj.dtype)
    for k, g in enumerate(es.groups):
        out[:, k] = proj[:, g].sum(axis=1)
    return out


def wigner_longtime(es: EigenSystem, j: int, meta: GridMeta | None = None) -> PhaseSpaceGrid:
    """Exact infinite-time average.

    Only pairs of eigenstates with equal energy survive the time average,
    which is the same as summing ``A_g(x-y) conj(A_g(x+y))`` over groups.
    """
    if not 0 <= j < es.n:
        raise IndexError(f"source node {j} outside ring of {es.n} sites")
    w, residue = _to_real(correlation(group_amplitudes(es, j)))
    return PhaseSpaceGrid(w, meta or GridMeta(n=es.n, j=j, time=None), residue)


def trapezoid_weights(count: int) -> np.ndarray:
    if count < 2:
        raise ValueError("need at least two time samples")
    wts = np.full(count, 1.0 / (count - 1))
    wts[[0, -1]] *= 0.5
    return wts


def finite_time_average(es: EigenSystem, j: int, T: float, n_samples: int,
                        chunk: int = 256) -> PhaseSpaceGrid:
    """Trapezoidal mean of snapshots at ``n_samples`` uniform times in [0, T]."""
    if T < 0:
        raise ValueError("averaging window must be non-negative")
    times = np.linspace(0.0, T, n_samples)
    wts = trapezoid_weights(n_samples)
    c = np.zeros((es.n, es.n), dtype=complex)
    for start in range(0, n_samples, chunk):
        sl = slice(start, start + chunk)
        amps = propagate(es, j, times[sl])
        c += correlation(amps * np.sqrt(wts[sl]))
    w, residue = _to_real(c)
    return PhaseSpaceGrid(w, GridMeta(n=es.n, j=j, time=None), residue)


def wigner_eigen_sum(es: EigenSystem, j: int, t: float) -> np.ndarray:
    """Literal double eigen-sum expansion; O(N^4) cross-check for small N."""
    n = es.n
    if n > 25:
        raise ValueError("direct eigen-sum is a cross-check for N <= 25 only")
    v = es.vectors
    minus, plus = _pair_indices(n)
    kappa = np.arange(n)
    ky = np.exp(2j * np.pi * np.outer(np.arange(n), kappa) / n)  # [y, kappa]
    dE = np.exp(-1j * np.subtract.outer(es.values, es.values) * t)  # [theta', theta]
    # term[x, y] = sum_{theta', theta} dE[theta', theta] v[x-y, theta'] v[j, theta'] v[j, theta] v[x+y, theta]
    left = v[minus] * v[j]  # [x, y, theta']
    right = v[plus] * v[j]  # [x, y, theta]
    term = np.einsum("xya,ab,xyb->xy", left, dE, right)
    return (term @ ky).real / n


def marginal_position(g: PhaseSpaceGrid) -> np.ndarray:
    return g.w.sum(axis=1)


def marginal_momentum(g: PhaseSpaceGrid) -> np.ndarray:
    return g.w.sum(axis=0)

