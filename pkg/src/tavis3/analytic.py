"""Closed-form evolution operator U(tau) = exp(-i H tau) for three atoms.

Each of the 64 atomic matrix elements is an operator of the form

    adag**p  g(N)  a**q,      g(N) = u(N) / D(N),

with p = 3 - excitation(row) and q = 3 - excitation(col). On sector M >= 3
every column state has exactly q photons more than m = M - 3, so each
element reduces to a scalar evaluated at m. Sectors M <= 2 are not reached
by these forms (a**q annihilates the column states) and are propagated
through the reference eigendecomposition instead.

Coefficient families are keyed by the element where they first appear:

    U11, U22, U88, U12, U15, U25, U58, U18   named scalar functions
    V55 = u22 - (cos(T1 tau) - cos(T2 tau)) / Omega
    V23 = u22 - cos(sqrt(n+2) tau)
    V56 = V55 - cos(sqrt(n+2) tau)
    V27 = u25 + i sin(sqrt(n+2) tau)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .model import EXCITATIONS, JointState, TruncationError, _check_M, atomic_index
from .oracle import SectorPropagator, batched_oracle_blocks, sector_eigensystem
from .spectral import spectral_arrays

TRUNCATION_TOL = 1e-10
ENGINES = ("analytic", "oracle")


class Pieces(NamedTuple):
    """Trigonometric building blocks shared by every coefficient family."""

    n: np.ndarray
    omega: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    cos1: np.ndarray
    cos2: np.ndarray
    sin1: np.ndarray
    sin2: np.ndarray
    root: np.ndarray  # sqrt(n + 2)
    cos_mid: np.ndarray
    sin_mid: np.ndarray


def pieces(n, tau: float) -> Pieces:
    n = np.asarray(n, dtype=float)
    omega, t1, t2 = spectral_arrays(n)
    root = np.sqrt(n + 2.0)
    return Pieces(
        n, omega, t1, t2,
        np.cos(t1 * tau), np.cos(t2 * tau),
        np.sin(t1 * tau), np.sin(t2 * tau),
        root, np.cos(root * tau), np.sin(root * tau),
    )


def _u11(s: Pieces):
    N, Om = s.n, s.omega
    return ((7 + 2 * N + Om) * s.cos1 + (-7 - 2 * N + Om) * s.cos2) / (2 * Om)


def _u22(s: Pieces):
    N, Om = s.n, s.omega
    return (
        (-1 - 2 * N + Om) * s.cos1 + (1 + 2 * N + Om) * s.cos2 + 4 * Om * s.cos_mid
    ) / (6 * Om)


def _u88(s: Pieces):
    N, Om = s.n, s.omega
    return ((1 + 2 * N + Om) * s.cos1 + (-1 - 2 * N + Om) * s.cos2) / (2 * Om)


def _u12(s: Pieces):
    N, Om = s.n, s.omega
    num = s.theta1 * (7 + 2 * N + Om) * s.sin1 + s.theta2 * (-7 - 2 * N + Om) * s.sin2
    return -1j * num / (6 * Om * np.sqrt(N + 1))


def _u15(s: Pieces):
    N = s.n
    return (s.cos2 - s.cos1) / s.omega * np.sqrt((N + 1) * (N + 2))


def _u25(s: Pieces):
    N, Om = s.n, s.omega
    num = (
        -s.theta1 * (2 + N) * s.sin1
        + s.theta2 * (2 + N) * s.sin2
        + s.root * Om * s.sin_mid
    )
    return -1j * num / (3 * Om * s.root)


def _u58(s: Pieces):
    N, Om = s.n, s.omega
    num = s.theta1 * (1 + 2 * N + Om) * s.sin1 + s.theta2 * (-1 - 2 * N + Om) * s.sin2
    return -1j * num / (6 * Om * np.sqrt(N + 3))


def _u18(s: Pieces):
    N, Om = s.n, s.omega
    num = s.theta1 * s.theta2 * (s.theta2 * s.sin1 - s.theta1 * s.sin2)
    return 1j * num * np.sqrt(N + 2) / (3 * Om * np.sqrt((N + 1) * (N + 3)))


def _v55(s: Pieces):
    return _u22(s) - (s.cos1 - s.cos2) / s.omega


def _v23(s: Pieces):
    return _u22(s) - s.cos_mid


def _v56(s: Pieces):
    return _v55(s) - s.cos_mid


def _v27(s: Pieces):
    # odd-parity element: the sine term must be imaginary like the rest of u25
    return _u25(s) + 1j * s.sin_mid


COEFFICIENTS: dict[str, Callable[[Pieces], np.ndarray]] = {
    "U11": _u11,
    "U22": _u22,
    "U88": _u88,
    "U12": _u12,
    "U15": _u15,
    "U25": _u25,
    "U58": _u58,
    "U18": _u18,
    "V55": _v55,
    "V23": _v23,
    "V56": _v56,
    "V27": _v27,
}

DENOMINATORS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "1": lambda n: np.ones_like(n),
    "n+1": lambda n: n + 1,
    "(n+1)(n+2)": lambda n: (n + 1) * (n + 2),
    "(n+1)(n+2)(n+3)": lambda n: (n + 1) * (n + 2) * (n + 3),
    "sqrt(n+1)": lambda n: np.sqrt(n + 1),
    "sqrt((n+1)(n+2))": lambda n: np.sqrt((n + 1) * (n + 2)),
    "(n+1)sqrt((n+1)(n+2))": lambda n: (n + 1) * np.sqrt((n + 1) * (n + 2)),
    "(n+1)sqrt(n+2)": lambda n: (n + 1) * np.sqrt(n + 2),
    "(n+1)(n+2)sqrt(n+3)": lambda n: (n + 1) * (n + 2) * np.sqrt(n + 3),
    "sqrt((n+1)(n+2)(n+3))": lambda n: np.sqrt((n + 1) * (n + 2) * (n + 3)),
}


@dataclass(frozen=True)
class ElementSpec:
    row: int
    col: int
    p: int
    q: int
    fn: str
    denominator: str


# (fn, denominator, (p, q) as written for the listed orientation, listed elements).
# Off-diagonal families also cover the transposed elements with p and q swapped.
_FAMILIES = [
    ("U11", "1", (0, 0), [(1, 1)]),
    ("U22", "n+1", (1, 1), [(2, 2), (3, 3), (4, 4)]),
    ("V55", "(n+1)(n+2)", (2, 2), [(5, 5), (6, 6), (7, 7)]),
    ("U88", "(n+1)(n+2)(n+3)", (3, 3), [(8, 8)]),
    ("U12", "sqrt(n+1)", (0, 1), [(1, 2), (1, 3), (1, 4)]),
    ("U15", "sqrt((n+1)(n+2))", (0, 2), [(1, 5), (1, 6), (1, 7)]),
    ("U15", "(n+1)sqrt((n+1)(n+2))", (1, 3), [(2, 8), (3, 8), (4, 8)]),
    ("U25", "(n+1)sqrt(n+2)", (1, 2), [(2, 5), (2, 6), (3, 5), (3, 7), (4, 6), (4, 7)]),
    ("V27", "(n+1)sqrt(n+2)", (1, 2), [(2, 7), (3, 6), (4, 5)]),
    ("U58", "(n+1)(n+2)sqrt(n+3)", (2, 3), [(5, 8), (6, 8), (7, 8)]),
    ("U18", "sqrt((n+1)(n+2)(n+3))", (0, 3), [(1, 8)]),
    ("V23", "n+1", (1, 1), [(2, 3), (2, 4), (3, 4)]),
    ("V56", "(n+1)(n+2)", (2, 2), [(5, 6), (5, 7), (6, 7)]),
]


def _build_table() -> dict[tuple[int, int], ElementSpec]:
    table: dict[tuple[int, int], ElementSpec] = {}
    for fn, den, (p, q), elements in _FAMILIES:
        for r, c in elements:
            table[r, c] = ElementSpec(r, c, p, q, fn, den)
            if r != c:
                table[c, r] = ElementSpec(c, r, q, p, fn, den)
    if len(table) != 64:
        raise AssertionError(f"element table has {len(table)} entries, expected 64")
    for (r, c), e in table.items():
        if e.p != 3 - EXCITATIONS[r - 1] or e.q != 3 - EXCITATIONS[c - 1]:
            raise AssertionError(f"element ({r},{c}) has ladder powers ({e.p},{e.q})")
    return table


ELEMENTS = _build_table()


def element_spec(row: int, col: int) -> ElementSpec:
    r, c = atomic_index(row).index, atomic_index(col).index
    return ELEMENTS[r, c]


def eval_coefficient(fn: str, n, tau: float):
    """Scalar family ``fn`` at (post-annihilation) photon number ``n`` and time ``tau``.

    Accepts array ``n``. The value equals the sector-matrix element the family
    produces once the ladder factors cancel their denominators.
    """
    if fn not in COEFFICIENTS:
        raise ValueError(f"unknown coefficient family {fn!r}")
    if np.any(np.asarray(n) < 0):
        raise ValueError("photon number must be >= 0")
    out = COEFFICIENTS[fn](pieces(n, tau))
    return complex(out) if np.ndim(out) == 0 else out


def _falling(n, k: int):
    """n (n-1) ... (n-k+1) as float."""
    out = np.ones_like(np.asarray(n, dtype=float))
    for j in range(k):
        out = out * (n - j)
    return out


def element_amplitude(row: int, col: int, n: int, tau: float) -> tuple[int, complex]:
    """Apply element (row, col) to the Fock state |n>.

    Returns the output photon number and amplitude of
    adag**p g(N) a**q |n>. Inputs with n < q are annihilated.
    """
    e = element_spec(row, col)
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    if n < e.q:
        return n, 0j
    m = n - e.q
    g = eval_coefficient(e.fn, m, tau) / float(DENOMINATORS[e.denominator](float(m)))
    amp = math.sqrt(_falling(n, e.q)) * g * math.sqrt(_falling(m + e.p, e.p))
    return m + e.p, complex(amp)


_ROWS = np.array([r - 1 for r, _ in ELEMENTS])
_COLS = np.array([c - 1 for _, c in ELEMENTS])


@lru_cache(maxsize=64)
def _weights(m_start: int, m_stop: int) -> np.ndarray:
    """Ladder factors over denominators, shape (K, 64), for m in [m_start, m_stop)."""
    m = np.arange(m_start, m_stop, dtype=float)
    w = np.empty((m.size, len(ELEMENTS)))
    for k, e in enumerate(ELEMENTS.values()):
        ladder = np.sqrt(_falling(m + e.q, e.q) * _falling(m + e.p, e.p))
        w[:, k] = ladder / DENOMINATORS[e.denominator](m)
    w.flags.writeable = False
    return w


def analytic_blocks(m_start: int, m_stop: int, tau: float) -> np.ndarray:
    """Closed-form 8x8 propagators for sectors M = m + 3, m in [m_start, m_stop)."""
    s = pieces(np.arange(m_start, m_stop), tau)
    fns = [e.fn for e in ELEMENTS.values()]
    values = {fn: np.broadcast_to(COEFFICIENTS[fn](s), s.n.shape) for fn in set(fns)}
    entries = np.stack([values[fn] for fn in fns], axis=1) * _weights(m_start, m_stop)
    out = np.zeros((m_stop - m_start, 8, 8), dtype=complex)
    out[:, _ROWS, _COLS] = entries
    return out


def _check_tau(tau) -> float:
    tau = float(tau)
    if not math.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    return tau


def build_sector_propagator(M: int, tau: float) -> SectorPropagator:
    """Propagator on sector ``M``: closed form for M >= 3, eigendecomposition below."""
    M = _check_M(M)
    tau = _check_tau(tau)
    if M >= 3:
        matrix = analytic_blocks(M - 3, M - 2, tau)[0]
    else:
        matrix = sector_eigensystem(M).propagator(tau)
    return SectorPropagator(M, tau, matrix)


@lru_cache(maxsize=16)
def _layout(cutoff: int):
    # photon numbers of the 8 members of each complete sector M = 3 .. cutoff
    m = np.arange(cutoff - 2)[:, None]
    photons = m + 3 - EXCITATIONS[None, :]
    photons.flags.writeable = False
    return photons


def propagate(
    state: JointState,
    tau: float,
    engine: str = "analytic",
    check_truncation: bool = True,
) -> JointState:
    """Evolve ``state`` by dimensionless time ``tau``.

    Complete sectors 3 <= M <= cutoff use ``engine`` ("analytic" or
    "oracle"). Sectors 0-2 always use the eigendecomposition. The incomplete
    sectors above the cutoff evolve under the truncated Hamiltonian, which is
    what a truncated-space exponential does; the truncation guard keeps their
    weight below 1e-10.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    tau = _check_tau(tau)
    cutoff = state.cutoff
    if cutoff < 3:
        raise ValueError(f"propagation needs cutoff >= 3, got {cutoff}")
    if check_truncation:
        excess = state.top_mass(3)
        if excess > TRUNCATION_TOL:
            raise TruncationError(
                f"{excess:.3g} of the norm lies in the top 3 photon levels", excess, tau
            )

    amps = state.amplitudes
    out = np.zeros_like(amps)

    photons = _layout(cutoff)
    atoms = np.broadcast_to(np.arange(8), photons.shape)
    K = photons.shape[0]
    if engine == "analytic":
        blocks = analytic_blocks(0, K, tau)
    else:
        blocks = batched_oracle_blocks(np.arange(3, cutoff + 1), tau)
    out[atoms, photons] = np.einsum("kij,kj->ki", blocks, amps[atoms, photons])

    for M in (0, 1, 2, cutoff + 1, cutoff + 2, cutoff + 3):
        system = sector_eigensystem(M, cutoff)
        a = np.array([k for k in range(8) if 0 <= M - EXCITATIONS[k] <= cutoff])
        n = M - EXCITATIONS[a]
        out[a, n] = system.propagator(tau) @ amps[a, n]
    return JointState(out)
