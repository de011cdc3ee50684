"""Wigner functions of continuous-time quantum walks on disordered rings."""

__version__ = "0.1.0"

from .model import DisorderKind, DisorderRealization, build_h0, build_hamiltonian, sample_disorder
from .spectral import EigenSystem, eigendecompose, propagate, transition_probability
from .wigner import (GridMeta, PhaseSpaceGrid, finite_time_average, marginal_momentum,
                     marginal_position, wigner_bloch, wigner_longtime, wigner_snapshot)
from .ensemble import (EnsembleResult, EnsembleSpec, ensemble_longtime, ensemble_snapshot,
                       merge_results, run_ensemble, verify_interchange)

__all__ = [
    "DisorderKind", "DisorderRealization", "build_h0", "build_hamiltonian", "sample_disorder",
    "EigenSystem", "eigendecompose", "propagate", "transition_probability",
    "GridMeta", "PhaseSpaceGrid", "finite_time_average", "marginal_momentum",
    "marginal_position", "wigner_bloch", "wigner_longtime", "wigner_snapshot",
    "EnsembleResult", "EnsembleSpec", "ensemble_longtime", "ensemble_snapshot",
    "merge_results", "run_ensemble", "verify_interchange",
]
