"""Reference propagator from direct diagonalisation of the sector Hamiltonians.

Nothing here uses the closed-form element table; the only inputs are the
coupling Hamiltonian and the basis ordering from :mod:`tavis3.model`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .model import _check_M, build_sector_hamiltonian

RECONSTRUCTION_TOL = 1e-12


@dataclass(frozen=True)
class SectorEigensystem:
    M: int
    frequencies: np.ndarray
    vectors: np.ndarray = field(repr=False)

    def propagator(self, tau: float) -> np.ndarray:
        phases = np.exp(-1j * self.frequencies * tau)
        return (self.vectors * phases) @ self.vectors.T


@dataclass(frozen=True)
class SectorPropagator:
    M: int
    tau: float
    matrix: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class DeviationReport:
    M: int
    tau: float
    max_abs: float
    worst_entry: tuple[int, int]


@lru_cache(maxsize=None)
def _eigensystem(M: int, cutoff: int | None) -> SectorEigensystem:
    h = build_sector_hamiltonian(M, cutoff=cutoff)
    w, v = np.linalg.eigh(h)
    resid = np.max(np.abs((v * w) @ v.T - h))
    if resid > RECONSTRUCTION_TOL:
        raise ArithmeticError(f"sector {M}: eigendecomposition residual {resid:.3g}")
    w.flags.writeable = False
    v.flags.writeable = False
    return SectorEigensystem(M, w, v)


def sector_eigensystem(M: int, cutoff: int | None = None) -> SectorEigensystem:
    """Eigenfrequencies and orthonormal eigenvectors of H/(hbar gamma) on sector ``M``.

    The decomposition is checked by reconstruction before it is returned.
    Results are cached and read-only. ``cutoff`` restricts the basis to
    photon numbers <= cutoff (only matters when ``M > cutoff``).
    """
    M = _check_M(M)
    if cutoff is not None and M <= cutoff:
        cutoff = None
    return _eigensystem(M, cutoff)


def oracle_sector_propagator(M: int, tau: float) -> SectorPropagator:
    tau = float(tau)
    if not np.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    return SectorPropagator(M, tau, sector_eigensystem(M).propagator(tau))


def batched_oracle_blocks(Ms: np.ndarray, tau: float) -> np.ndarray:
    """Stacked 8x8 reference propagators for complete sectors ``Ms`` (all >= 3)."""
    systems = [sector_eigensystem(int(M)) for M in Ms]
    w = np.stack([s.frequencies for s in systems])
    v = np.stack([s.vectors for s in systems])
    phases = np.exp(-1j * w * tau)
    return np.einsum("kij,kj,klj->kil", v, phases, v)


def compare_propagators(M: int, tau: float) -> DeviationReport:
    """Elementwise max deviation between the closed-form and reference propagators."""
    from .analytic import build_sector_propagator

    M = _check_M(M)
    if M < 3:
        raise ValueError("comparison needs M >= 3; lower sectors share one code path")
    diff = np.abs(build_sector_propagator(M, tau).matrix - oracle_sector_propagator(M, tau).matrix)
    r, c = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return DeviationReport(M, float(tau), float(diff[r, c]), (int(r), int(c)))


