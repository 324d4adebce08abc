"""Exact evolution operator of the resonant three-atom Tavis-Cummings model."""

from .analytic import (
    COEFFICIENTS,
    ELEMENTS,
    ElementSpec,
    build_sector_propagator,
    element_amplitude,
    element_spec,
    eval_coefficient,
    propagate,
)
from .dynamics import (
    CoherentField,
    FockField,
    InitialStateSpec,
    ObservableRow,
    observables,
    prepare_state,
    run_time_series,
)
from .model import (
    ATOMIC_BASIS,
    LABELS,
    AtomicBasisIndex,
    ExcitationSector,
    JointState,
    ModelParams,
    TruncationError,
    build_sector_hamiltonian,
    enumerate_sector,
    excitation_count,
)
from .oracle import (
    DeviationReport,
    SectorEigensystem,
    SectorPropagator,
    compare_propagators,
    oracle_sector_propagator,
    sector_eigensystem,
)
from .spectral import SpectralScalars, sector_frequencies, spectral_scalars

__version__ = "0.1.0"
