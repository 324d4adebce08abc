"""Joint atom-field state space for three two-level atoms in one cavity mode.

Atomic configurations are numbered 1..8 in the order

    eee, eeg, ege, gee, egg, geg, gge, ggg

so indices 1, 2-4, 5-7 and 8 carry 3, 2, 1 and 0 excitations. The resonant
RWA coupling conserves M = n + (number of excited atoms), so every operator
in this package is block diagonal in M. Times are dimensionless, tau = gamma*t,
with hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

N_ATOMS = 3
LABELS = ("eee", "eeg", "ege", "gee", "egg", "geg", "gge", "ggg")


class TruncationError(ValueError):
    """Raised when a state carries too much weight near the Fock cutoff."""

    def __init__(self, message: str, excess: float, tau: float | None = None):
        super().__init__(message)
        self.excess = excess
        self.tau = tau


@dataclass(frozen=True)
class AtomicBasisIndex:
    index: int
    label: str
    excitation: int

    def __post_init__(self):
        if not 1 <= self.index <= 8:
            raise ValueError(f"atomic index must be in 1..8, got {self.index}")
        if LABELS[self.index - 1] != self.label:
            raise ValueError(f"index {self.index} is {LABELS[self.index - 1]!r}, not {self.label!r}")
        if self.label.count("e") != self.excitation:
            raise ValueError("excitation must equal the number of excited atoms")


ATOMIC_BASIS = tuple(AtomicBasisIndex(k + 1, s, s.count("e")) for k, s in enumerate(LABELS))
EXCITATIONS = np.array([a.excitation for a in ATOMIC_BASIS], dtype=int)


def atomic_index(key: int | str | AtomicBasisIndex) -> AtomicBasisIndex:
    """Look up a configuration by 1-based index or by its e/g label."""
    if isinstance(key, AtomicBasisIndex):
        return key
    if isinstance(key, str):
        try:
            return ATOMIC_BASIS[LABELS.index(key)]
        except ValueError:
            raise ValueError(f"unknown atomic label {key!r}") from None
    if isinstance(key, (bool, np.bool_)) or not isinstance(key, (int, np.integer)):
        raise ValueError(f"atomic index must be an integer, got {key!r}")
    if not 1 <= key <= 8:
        raise ValueError(f"atomic index must be in 1..8, got {key}")
    return ATOMIC_BASIS[int(key) - 1]


def excitation_count(a: int | str | AtomicBasisIndex) -> int:
    return atomic_index(a).excitation


def flip(label: str, atom: int) -> str:
    """Flip atom ``atom`` (0-based) between e and g."""
    c = "g" if label[atom] == "e" else "e"
    return label[:atom] + c + label[atom + 1:]


@dataclass(frozen=True)
class ModelParams:
    coupling: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.coupling) and self.coupling > 0):
            raise ValueError(f"coupling must be finite and > 0, got {self.coupling}")


@dataclass(frozen=True)
class ExcitationSector:
    """Basis of one total-excitation block, ascending in atomic index.

    ``cutoff`` limits the photon number; it is ``None`` for a complete
    sector. Sectors with ``M > cutoff`` are incomplete, since some of their
    members would need more photons than the truncated space holds.
    """

    M: int
    basis: tuple[tuple[AtomicBasisIndex, int], ...]
    cutoff: int | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def atoms(self) -> np.ndarray:
        """0-based atomic indices of the basis states."""
        return np.array([a.index - 1 for a, _ in self.basis], dtype=int)

    @property
    def photons(self) -> np.ndarray:
        return np.array([n for _, n in self.basis], dtype=int)

    @property
    def complete(self) -> bool:
        return self.dim == full_dim(self.M)


def full_dim(M: int) -> int:
    return (1, 4, 7)[M] if M < 3 else 8


def _check_M(M) -> int:
    if isinstance(M, (bool, np.bool_)) or not isinstance(M, (int, np.integer)):
        raise ValueError(f"sector label must be an integer, got {M!r}")
    if M < 0:
        raise ValueError(f"sector label must be >= 0, got {M}")
    return int(M)


def enumerate_sector(M: int, cutoff: int | None = None) -> ExcitationSector:
    M = _check_M(M)
    basis = tuple(
        (a, M - a.excitation)
        for a in ATOMIC_BASIS
        if M - a.excitation >= 0 and (cutoff is None or M - a.excitation <= cutoff)
    )
    return ExcitationSector(M, basis, cutoff)


@lru_cache(maxsize=None)
def _sector_hamiltonian(M: int, cutoff: int | None) -> np.ndarray:
    sector = enumerate_sector(M, cutoff)
    where = {(a.index, n): k for k, (a, n) in enumerate(sector.basis)}
    h = np.zeros((sector.dim, sector.dim))
    for k, (a, n) in enumerate(sector.basis):
        # a sigma_i^+ : absorb one photon, excite atom i
        if n == 0:
            continue
        for i in range(N_ATOMS):
            if a.label[i] == "g":
                j = where.get((atomic_index(flip(a.label, i)).index, n - 1))
                if j is not None:
                    h[j, k] = h[k, j] = math.sqrt(n)
    h.flags.writeable = False
    return h


def build_sector_hamiltonian(
    M: int, params: ModelParams | None = None, cutoff: int | None = None
) -> np.ndarray:
    """Interaction Hamiltonian on sector ``M`` (real symmetric, hbar = 1).

    Entries are ``coupling * sqrt(n)`` between states joined by one photon
    absorption and one atomic excitation. With the default coupling of 1 this
    is H/(hbar gamma), the generator of the dimensionless-time evolution.
    """
    M = _check_M(M)
    h = _sector_hamiltonian(M, cutoff)
    if params is None or params.coupling == 1.0:
        return h.copy()
    return params.coupling * h


@dataclass(frozen=True)
class JointState:
    """Amplitudes indexed by (atomic configuration, photon number).

    ``amplitudes`` has shape (8, cutoff + 1); row k is atomic index k + 1.
    The array is stored read-only.
    """

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != 8 or amps.shape[1] < 1:
            raise ValueError(f"amplitudes must have shape (8, cutoff + 1), got {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[1] - 1

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def amplitude(self, atoms: int | str, n: int) -> complex:
        return complex(self.amplitudes[atomic_index(atoms).index - 1, n])

    def top_mass(self, levels: int = 3) -> float:
        """Squared norm held in the highest ``levels`` photon numbers."""
        return float(np.sum(np.abs(self.amplitudes[:, -levels:]) ** 2))

    @classmethod
    def basis_state(cls, atoms: int | str, n: int, cutoff: int) -> JointState:
        if not 0 <= n <= cutoff:
            raise ValueError(f"photon number {n} outside 0..{cutoff}")
        amps = np.zeros((8, cutoff + 1), dtype=complex)
        amps[atomic_index(atoms).index - 1, n] = 1.0
        return cls(amps)

    def sector_vector(self, M: int) -> np.ndarray:
        sector = enumerate_sector(M, self.cutoff)
        return self.amplitudes[sector.atoms, sector.photons].copy()
