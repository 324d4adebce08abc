"""Spectral scalars of the three-atom resonant model.

With x = n + 2,

    omega**2  = 9 + 16 x**2
    theta1**2 = 5 x - omega
    theta2**2 = 5 x + omega

The sector with total excitation M >= 3 has eigenfrequencies
+-theta1(M - 3), +-theta2(M - 3) and a doubly degenerate +-sqrt(M - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SpectralScalars:
    n: int
    omega: float
    theta1: float
    theta2: float


def spectral_arrays(n):
    """Vectorised ``(omega, theta1, theta2)`` for integer or array ``n``.

    No domain check; callers pass n >= -1.
    """
    x = np.asarray(n, dtype=float) + 2.0
    omega = np.sqrt(9.0 + 16.0 * x * x)
    theta1 = np.sqrt(5.0 * x - omega)
    theta2 = np.sqrt(5.0 * x + omega)
    return omega, theta1, theta2


def spectral_scalars(n: int) -> SpectralScalars:
    """Evaluate the scalars at photon number ``n``.

    ``n = -1`` is accepted as the analytic continuation used to describe the
    two-excitation sector (theta1 = 0, theta2 = sqrt(10)). Anything lower
    makes theta1 imaginary and is rejected.
    """
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, (int, np.integer)):
        raise ValueError(f"photon number must be an integer, got {n!r}")
    if n < -1:
        raise ValueError(f"spectral scalars are defined for n >= -1, got {n}")
    omega, theta1, theta2 = spectral_arrays(n)
    return SpectralScalars(int(n), float(omega), float(theta1), float(theta2))


def sector_frequencies(M: int) -> np.ndarray:
    """Closed-form sorted eigenfrequencies of sector ``M`` (units of gamma)."""
    if M < 0:
        raise ValueError(f"sector label must be >= 0, got {M}")
    if M == 0:
        f = [0.0]
    elif M == 1:
        f = [0.0, 0.0, np.sqrt(3.0), -np.sqrt(3.0)]
    elif M == 2:
        s = spectral_scalars(-1)
        f = [0.0, 1.0, 1.0, -1.0, -1.0, s.theta2, -s.theta2]
    else:
        s = spectral_scalars(M - 3)
        r = np.sqrt(M - 1.0)
        f = [s.theta1, -s.theta1, s.theta2, -s.theta2, r, r, -r, -r]
    return np.sort(np.array(f))
