"""Exit criteria. Each test prints one PASS/FAIL line; run with ``pytest tests/test_acceptance.py``."""

import json
import math
import time

import numpy as np
import pytest

from tavis3 import analytic
from tavis3.analytic import build_sector_propagator, propagate
from tavis3.cli import main
from tavis3.dynamics import CoherentField, InitialStateSpec, run_time_series
from tavis3.model import JointState
from tavis3.oracle import oracle_sector_propagator, sector_eigensystem
from tavis3.spectral import spectral_scalars

from conftest import PERMUTATIONS, sector_permutation


@pytest.fixture
def report(capsys):
    def _report(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        assert ok, f"{criterion}: {detail}"
    return _report


def _max_abs(a, b):
    return float(np.max(np.abs(a - b)))


def test_1_oracle_equivalence(report):
    t0 = time.perf_counter()
    worst = {}
    for tau in (0.1, 1.0, 10.0, 100.0):
        worst[tau] = max(
            _max_abs(build_sector_propagator(M, tau).matrix, oracle_sector_propagator(M, tau).matrix)
            for M in range(3, 41)
        )
    elapsed = time.perf_counter() - t0
    ok = all(v <= (1e-8 if tau == 100.0 else 1e-9) for tau, v in worst.items()) and elapsed < 10
    detail = ", ".join(f"tau={t:g}: {v:.2e}" for t, v in worst.items())
    report("1 oracle equivalence", ok, f"{detail}; {elapsed:.2f}s")


def test_2_unitarity(report):
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    worst = 0.0
    for M in range(41):
        for tau in rng.uniform(0, 50, 10):
            U = build_sector_propagator(M, tau).matrix
            worst = max(worst, _max_abs(U.conj().T @ U, np.eye(U.shape[0])))
    elapsed = time.perf_counter() - t0
    report("2 unitarity", worst <= 1e-10 and elapsed < 5, f"max {worst:.2e}; {elapsed:.2f}s")


def test_3_group_law(report):
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    worst = 0.0
    for M in range(21):
        for t1, t2 in rng.uniform(-25, 25, (20, 2)):
            lhs = build_sector_propagator(M, t1).matrix @ build_sector_propagator(M, t2).matrix
            worst = max(worst, _max_abs(lhs, build_sector_propagator(M, t1 + t2).matrix))
    elapsed = time.perf_counter() - t0
    report("3 group law", worst <= 1e-9 and elapsed < 5, f"max {worst:.2e}; {elapsed:.2f}s")


def test_4_identity_and_vacuum(report):
    worst = max(
        _max_abs(build_sector_propagator(M, 0.0).matrix, np.eye(8 if M >= 3 else (1, 4, 7)[M]))
        for M in range(41)
    )
    vac = JointState.basis_state("ggg", 0, 10)
    fixed = all(
        np.array_equal(propagate(vac, tau, engine=e).amplitudes, vac.amplitudes)
        for tau in (0.0, 0.5, 3.0, 47.0, -12.0, 1e4)
        for e in ("analytic", "oracle")
    )
    report("4 identity and vacuum", worst <= 1e-12 and fixed, f"|U(0)-I| {worst:.2e}; vacuum fixed={fixed}")


def test_5_permutation_covariance(report):
    rng = np.random.default_rng(5)
    worst = 0.0
    for M in range(21):
        for tau in rng.uniform(0, 50, 3):
            U = build_sector_propagator(M, tau).matrix
            for perm in PERMUTATIONS:
                P = sector_permutation(M, perm)
                worst = max(worst, _max_abs(P @ U @ P.T, U))
    report("5 permutation covariance", worst <= 1e-12, f"max {worst:.2e}")


def test_6_low_sector_closed_forms(report):
    taus = np.linspace(0, 20, 100)
    surv = np.array([abs(build_sector_propagator(1, t).matrix[3, 3]) ** 2 for t in taus])
    err1 = float(np.max(np.abs(surv - np.cos(math.sqrt(3) * taus) ** 2)))
    theta2 = spectral_scalars(-1).theta2
    expected = np.sort([0.0, 1.0, 1.0, -1.0, -1.0, theta2, -theta2])
    err2 = float(np.max(np.abs(sector_eigensystem(2).frequencies - expected)))
    ok = err1 <= 1e-10 and err2 <= 1e-10 and abs(theta2 - math.sqrt(10)) <= 1e-15
    report("6 low-sector closed forms", ok, f"M=1 survival {err1:.2e}; M=2 spectrum {err2:.2e}")


def test_7_spectrum(report):
    worst = 0.0
    for M in range(3, 21):
        s = spectral_scalars(M - 3)
        r = math.sqrt(M - 1)
        expected = np.sort([s.theta1, -s.theta1, s.theta2, -s.theta2, r, r, -r, -r])
        worst = max(worst, _max_abs(np.sort(sector_eigensystem(M).frequencies), expected))
    report("7 spectrum", worst <= 1e-10, f"max {worst:.2e}")


def test_8_end_to_end_dynamics(report):
    spec = InitialStateSpec("ggg", CoherentField(4 + 0j), 64)
    taus = np.linspace(0, 25, 2000)
    t0 = time.perf_counter()
    a = run_time_series(spec, taus, engine="analytic")
    b = run_time_series(spec, taus, engine="oracle")
    elapsed = time.perf_counter() - t0
    inv = max(abs(x.inversion - y.inversion) for x, y in zip(a, b))
    norm = max(abs(1 - r.norm2) for r in a + b)
    e0 = a[0].total_excitation
    exc = max(abs(r.total_excitation - e0) for r in a + b)
    ok = inv <= 1e-8 and norm <= 1e-10 and exc <= 1e-10 and elapsed < 60
    report(
        "8 end-to-end dynamics", ok,
        f"inversion {inv:.2e}; norm drift {norm:.2e}; excitation drift {exc:.2e}; {elapsed:.2f}s",
    )


def test_9_cli_determinism_and_exit_codes(report, tmp_path, monkeypatch):
    evolve = {
        "mode": "evolve",
        "initial": {"atoms": "ggg", "field": {"type": "coherent", "alpha": [4, 0]}},
        "cutoff": 64,
        "tau": {"start": 0, "stop": 25, "steps": 400},
    }
    verify = {"mode": "verify", "tau_list": [0.1, 1, 10, 100], "sectors": {"min": 3, "max": 40}}

    def run(cfg, name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(cfg))
        out = tmp_path / f"{name}.out"
        return main(["--config", str(path), "--output", str(out)]), out.read_bytes()

    codes, same = [], True
    for cfg, name in ((evolve, "evolve"), (verify, "verify")):
        c1, b1 = run(cfg, name + "1")
        c2, b2 = run(cfg, name + "2")
        codes += [c1, c2]
        same &= b1 == b2
    original = analytic.COEFFICIENTS["V56"]
    monkeypatch.setitem(analytic.COEFFICIENTS, "V56", lambda s: original(s) + 1e-6)
    bad, _ = run(verify, "perturbed")
    ok = same and codes == [0, 0, 0, 0] and bad == 2
    report("9 CLI determinism and exit codes", ok, f"byte-identical={same}; exits {codes} then {bad} when perturbed")
