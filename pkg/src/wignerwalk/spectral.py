"""Eigen-pairs of real symmetric Hamiltonians and exact time propagation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_REL_EPS_DEG = 1e-9


class EigenSolveError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues, eigenvectors as columns, degeneracy groups.

    ``groups`` is a tuple of index arrays partitioning ``range(n)``; two
    neighbouring eigenvalues share a group when their gap is at most
    ``eps_deg``.
    """

    values: np.ndarray
    vectors: np.ndarray
    groups: tuple
    eps_deg: float

    @property
    def n(self) -> int:
        return len(self.values)

    def group_sizes(self) -> list[int]:
        return [len(g) for g in self.groups]


def group_degenerate(values: np.ndarray, eps_deg: float) -> tuple:
    values = np.asarray(values)
    if len(values) == 0:
        return ()
    cuts = np.flatnonzero(np.diff(values) > eps_deg) + 1
    return tuple(np.split(np.arange(len(values)), cuts))


def eigendecompose(h: np.ndarray, eps_deg: float | None = None) -> EigenSystem:
    """Diagonalize a real symmetric matrix.

    ``eps_deg`` defaults to 1e-9 times the spectral range.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    try:
        values, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"symmetric eigensolver did not converge: {exc}") from exc
    if eps_deg is None:
        eps_deg = DEFAULT_REL_EPS_DEG * float(values[-1] - values[0])
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenSystem(values, vectors, group_degenerate(values, eps_deg), float(eps_deg))


def propagate(es: EigenSystem, j: int, t: float | np.ndarray) -> np.ndarray:
    """Amplitudes <x| exp(-iHt) |j> for x = 0..N-1.

    With an array of times, returns shape ``(N, len(t))``.
    """
    if not 0 <= j < es.n:
        raise IndexError(f"source node {j} outside ring of {es.n} sites")
    t = np.asarray(t, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(es.values, t))
    coeffs = es.vectors[j][(...,) + (None,) * t.ndim] * phases
    return np.tensordot(es.vectors, coeffs, axes=(1, 0))


def transition_probability(amps: np.ndarray) -> np.ndarray:
    return np.abs(amps) ** 2
