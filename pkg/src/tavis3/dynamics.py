"""Initial states, observables and time series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import poisson

from .analytic import propagate
from .model import EXCITATIONS, LABELS, JointState, TruncationError, atomic_index

COHERENT_TAIL_TOL = 1e-10


@dataclass(frozen=True)
class FockField:
    n: int


@dataclass(frozen=True)
class CoherentField:
    alpha: complex


@dataclass(frozen=True)
class InitialStateSpec:
    atoms: str
    field: FockField | CoherentField
    cutoff: int

    def __post_init__(self):
        atomic_index(self.atoms)
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {self.cutoff}")
        if isinstance(self.field, FockField) and not 0 <= self.field.n <= self.cutoff:
            raise ValueError(f"Fock photon number {self.field.n} outside 0..{self.cutoff}")


@dataclass(frozen=True)
class ObservableRow:
    tau: float
    populations: tuple[float, ...]
    inversion: float
    mean_photons: float
    total_excitation: float

    @property
    def norm2(self) -> float:
        return math.fsum(self.populations)

    def as_dict(self) -> dict[str, float]:
        d = {"tau": self.tau}
        d.update({f"pop_{s}": p for s, p in zip(LABELS, self.populations)})
        d["inversion"] = self.inversion
        d["mean_photons"] = self.mean_photons
        d["total_excitation"] = self.total_excitation
        return d


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """c(n) = exp(-|alpha|^2/2) alpha^n / sqrt(n!) by upward recurrence."""
    c = np.empty(cutoff + 1, dtype=complex)
    c[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, cutoff + 1):
        c[n] = c[n - 1] * alpha / math.sqrt(n)
    return c


def prepare_state(spec: InitialStateSpec) -> JointState:
    """Product of the atomic configuration and a Fock or coherent field.

    Coherent states are renormalised after truncation; a tail weight above
    1e-10 beyond the cutoff is a :class:`TruncationError`. The rule of thumb
    cutoff >= |alpha|^2 + 8|alpha| is sufficient.
    """
    amps = np.zeros((8, spec.cutoff + 1), dtype=complex)
    row = atomic_index(spec.atoms).index - 1
    if isinstance(spec.field, FockField):
        amps[row, spec.field.n] = 1.0
        return JointState(amps)
    alpha = complex(spec.field.alpha)
    tail = float(poisson.sf(spec.cutoff, abs(alpha) ** 2))
    if tail > COHERENT_TAIL_TOL:
        raise TruncationError(
            f"coherent state alpha={alpha} loses {tail:.3g} beyond cutoff {spec.cutoff}", tail
        )
    c = coherent_amplitudes(alpha, spec.cutoff)
    amps[row] = c / np.sqrt(np.sum(np.abs(c) ** 2))
    return JointState(amps)


def observables(state: JointState, tau: float = 0.0) -> ObservableRow:
    prob = np.abs(state.amplitudes) ** 2
    pops = prob.sum(axis=1)
    n = np.arange(state.cutoff + 1)
    photons = float(prob.sum(axis=0) @ n)
    inversion = float(pops @ (2 * EXCITATIONS - 3))
    excited = float(pops @ EXCITATIONS)
    return ObservableRow(
        float(tau), tuple(float(p) for p in pops), inversion, photons, photons + excited
    )


def run_time_series(
    spec: InitialStateSpec | JointState,
    taus: Sequence[float],
    engine: str = "analytic",
) -> list[ObservableRow]:
    """One observable row per tau, each propagated from tau = 0 afresh."""
    taus = [float(t) for t in taus]
    if not all(math.isfinite(t) for t in taus):
        raise ValueError("taus must be finite")
    if any(b < a for a, b in zip(taus, taus[1:])):
        raise ValueError("taus must be ascending")
    psi0 = spec if isinstance(spec, JointState) else prepare_state(spec)
    rows = []
    for tau in taus:
        try:
            psi = propagate(psi0, tau, engine=engine)
        except TruncationError as err:
            err.tau = tau
            raise
        rows.append(observables(psi, tau))
    return rows
