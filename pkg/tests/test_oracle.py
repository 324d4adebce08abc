import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from tavis3.model import build_sector_hamiltonian
from tavis3.oracle import (
    compare_propagators,
    oracle_sector_propagator,
    sector_eigensystem,
)
from tavis3.spectral import sector_frequencies


@pytest.mark.parametrize("M", range(0, 41))
def test_eigensystem_invariants(M):
    es = sector_eigensystem(M)
    f = np.sort(es.frequencies)
    assert np.allclose(f, -f[::-1], atol=1e-10)
    d = len(f)
    assert np.max(np.abs(es.vectors.T @ es.vectors - np.eye(d))) <= 1e-12
    h = build_sector_hamiltonian(M)
    assert np.max(np.abs((es.vectors * es.frequencies) @ es.vectors.T - h)) <= 1e-12


def test_low_sector_spectra():
    assert np.allclose(sector_eigensystem(0).frequencies, [0.0])
    r3 = math.sqrt(3)
    assert np.allclose(sector_eigensystem(1).frequencies, [-r3, 0, 0, r3], atol=1e-14)
    r10 = math.sqrt(10)
    assert np.allclose(sector_eigensystem(2).frequencies, [-r10, -1, -1, 0, 1, 1, r10], atol=1e-14)


@pytest.mark.parametrize("M", range(3, 21))
def test_spectrum_matches_closed_form(M):
    assert np.allclose(sector_eigensystem(M).frequencies, sector_frequencies(M), rtol=0, atol=1e-10)


@pytest.mark.parametrize("M", [0, 1, 2, 3, 7, 25])
@pytest.mark.parametrize("tau", [0.0, 0.3, 4.0, -2.5])
def test_matches_scipy_expm(M, tau):
    # independent route: Pade scaling-and-squaring on the same Hamiltonian
    expected = scipy.linalg.expm(-1j * tau * build_sector_hamiltonian(M))
    got = oracle_sector_propagator(M, tau).matrix
    assert np.max(np.abs(got - expected)) <= 1e-12


def test_full_transfer_out_of_photon_state():
    tau = math.pi / (2 * math.sqrt(3))
    U = oracle_sector_propagator(1, tau).matrix
    assert abs(U[3, 3]) ** 2 <= 1e-20


@given(st.integers(0, 40), st.floats(-50, 50), st.floats(-50, 50))
def test_group_law_and_reversal(M, t1, t2):
    U1 = oracle_sector_propagator(M, t1).matrix
    U2 = oracle_sector_propagator(M, t2).matrix
    U12 = oracle_sector_propagator(M, t1 + t2).matrix
    d = U1.shape[0]
    assert np.max(np.abs(U1 @ U2 - U12)) <= 1e-12
    assert np.max(np.abs(U1.conj().T @ U1 - np.eye(d))) <= 1e-12
    assert np.max(np.abs(oracle_sector_propagator(M, -t1).matrix - U1.conj().T)) <= 1e-12


@given(st.integers(0, 40), st.floats(-20, 20), st.integers(0, 2**32 - 1))
def test_energy_conserved(M, tau, seed):
    rng = np.random.default_rng(seed)
    h = build_sector_hamiltonian(M)
    psi = rng.normal(size=h.shape[0]) + 1j * rng.normal(size=h.shape[0])
    psi /= np.linalg.norm(psi)
    out = oracle_sector_propagator(M, tau).matrix @ psi
    e0 = np.vdot(psi, h @ psi).real
    e1 = np.vdot(out, h @ out).real
    assert e1 == pytest.approx(e0, rel=1e-10, abs=1e-12)


def test_identity_at_zero():
    for M in range(41):
        U = oracle_sector_propagator(M, 0.0).matrix
        assert np.max(np.abs(U - np.eye(U.shape[0]))) <= 1e-14


def test_compare_propagators():
    rep = compare_propagators(3, 0.0)
    assert rep.max_abs <= 1e-12
    assert compare_propagators(3, 1.0).max_abs <= 1e-9
    assert compare_propagators(40, 100.0).max_abs <= 1e-8
    a, b = compare_propagators(17, 3.3), compare_propagators(17, 3.3)
    assert a == b
    with pytest.raises(ValueError):
        compare_propagators(2, 1.0)


def test_cache_is_read_only():
    es = sector_eigensystem(5)
    with pytest.raises(ValueError):
        es.frequencies[0] = 0.0
