"""Ring Hamiltonians with static site and transfer disorder.

The unperturbed ring is the CTQW Hamiltonian H0 = -T with unit transfer
rate: 2 on the diagonal, -1 between nearest neighbours, periodic in N.
Disorder enters as

    H|j> = H0|j> + 2 d_jj |j> - d_{j,j-1} |j-1> - d_{j,j+1} |j+1>

with the d's drawn from a standard normal and scaled by the strength
``delta``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

MAX_DELTA = 0.5
_UINT64 = 1 << 64


class DisorderKind(str, enum.Enum):
    NONE = "none"
    DD = "dd"
    DOD = "dod"
    CONSTRAINED_DOD = "cdod"

    @classmethod
    def parse(cls, value: "str | DisorderKind") -> "DisorderKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown disorder kind {value!r} (choose from {choices})") from None


def check_ring_size(n: int) -> int:
    if int(n) != n or n < 3:
        raise ValueError(f"ring size must be an integer >= 3, got {n!r}")
    return int(n)


def check_delta(delta: float, allow_large: bool = False) -> float:
    delta = float(delta)
    if not math.isfinite(delta) or delta < 0:
        raise ValueError(f"disorder strength must be >= 0, got {delta!r}")
    if delta > MAX_DELTA and not allow_large:
        raise ValueError(f"disorder strength must lie in [0, {MAX_DELTA}], got {delta!r}")
    return delta


@dataclass(frozen=True, eq=False)
class DisorderRealization:
    """One draw of the disorder operator, already scaled by ``delta``.

    ``offdiag[j]`` is the perturbation of the bond between sites j-1 and j
    (indices mod N).
    """

    diag: np.ndarray
    offdiag: np.ndarray
    kind: DisorderKind
    delta: float
    seed: int

    def __post_init__(self):
        self.diag.setflags(write=False)
        self.offdiag.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.diag)

    @classmethod
    def zero(cls, n: int, seed: int = 0) -> "DisorderRealization":
        n = check_ring_size(n)
        return cls(np.zeros(n), np.zeros(n), DisorderKind.NONE, 0.0, seed)


def standard_normals(seed: int, count: int) -> np.ndarray:
    """``count`` standard normals from a Philox stream via Box-Muller.

    Pairs of uniforms (u1, u2) yield cos and sin variates, interleaved, so
    the first ``k`` values of a longer draw equal a ``k``-draw.
    """
    rng = np.random.Generator(np.random.Philox(int(seed) % _UINT64))
    pairs = (count + 1) // 2
    u = rng.random((pairs, 2))
    radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))  # 1 - u in (0, 1]
    angle = 2.0 * np.pi * u[:, 1]
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:count]


def sample_disorder(n: int, kind: "DisorderKind | str", delta: float, seed: int,
                    allow_large: bool = False) -> DisorderRealization:
    """Draw a disorder realization.

    Draw order is fixed: DD fills ``diag``; DOD fills ``diag`` then
    ``offdiag`` (2N draws); the constrained variant fills ``offdiag`` and
    sets ``diag[j] = (offdiag[j] + offdiag[j+1]) / 2`` so every row of H
    keeps summing to zero.
    """
    n = check_ring_size(n)
    kind = DisorderKind.parse(kind)
    delta = check_delta(delta, allow_large)
    if kind is DisorderKind.NONE:
        raise ValueError("kind 'none' has no disorder to sample; use DisorderRealization.zero")

    if kind is DisorderKind.DD:
        diag = delta * standard_normals(seed, n)
        offdiag = np.zeros(n)
    elif kind is DisorderKind.DOD:
        z = standard_normals(seed, 2 * n)
        diag = delta * z[:n]
        offdiag = delta * z[n:]
    else:
        offdiag = delta * standard_normals(seed, n)
        diag = 0.5 * (offdiag + np.roll(offdiag, -1))
    return DisorderRealization(diag, offdiag, kind, delta, int(seed))


def build_h0(n: int) -> np.ndarray:
    n = check_ring_size(n)
    h = 2.0 * np.eye(n)
    idx = np.arange(n)
    h[idx, (idx + 1) % n] = -1.0
    h[idx, (idx - 1) % n] = -1.0
    return h


def build_hamiltonian(h0: np.ndarray, d: DisorderRealization | None = None) -> np.ndarray:
    """Return ``H0 + Delta`` as a new dense symmetric matrix."""
    h = np.array(h0, dtype=float, copy=True)
    if d is None:
        return h
    n = h.shape[0]
    if h.shape != (n, n) or d.n != n:
        raise ValueError(f"dimension mismatch: H0 is {h.shape}, disorder has {d.n} sites")
    idx = np.arange(n)
    left = (idx - 1) % n
    h[idx, idx] = h0[idx, idx] + 2.0 * d.diag
    bond = h0[idx, left] - d.offdiag
    h[idx, left] = bond
    h[left, idx] = bond
    return h
