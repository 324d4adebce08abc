"""Command line entry point: ``tavis3 --config run.json``.

Exit codes: 0 success, 1 config error, 2 verification failure,
3 truncation-guard failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, parse_config
from .dynamics import ObservableRow, run_time_series
from .model import LABELS, TruncationError
from .oracle import compare_propagators, sector_eigensystem
from .spectral import sector_frequencies

log = logging.getLogger("tavis3")

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_TRUNCATION = 0, 1, 2, 3
ENGINE_AGREEMENT_TOL = 1e-8

EVOLVE_COLUMNS = ["tau", *(f"pop_{s}" for s in LABELS), "inversion", "mean_photons", "total_excitation"]
VERIFY_COLUMNS = ["M", "tau", "max_abs", "worst_row", "worst_col"]
SPECTRUM_COLUMNS = ["M", "k", "frequency", "predicted"]


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def render(columns: list[str], rows: list[dict], kind: str) -> str:
    if kind == "csv":
        lines = [",".join(columns)]
        lines += [",".join(fmt(r[c]) for c in columns) for r in rows]
        return "\n".join(lines) + "\n"
    # hand-rolled so floats carry 17 significant digits, like the CSV
    objs = []
    for r in rows:
        fields = ", ".join(f'"{c}": {fmt(r[c]) if r[c] is not None else "null"}' for c in columns)
        objs.append("  {" + fields + "}")
    return "[\n" + ",\n".join(objs) + "\n]\n" if objs else "[]\n"


def _row_fields(row: ObservableRow) -> np.ndarray:
    return np.array([row.inversion, row.mean_photons, row.total_excitation, *row.populations])


def run_evolve(cfg: RunConfig) -> tuple[list[dict], int]:
    taus = cfg.taus
    engine = "analytic" if cfg.engine == "both" else cfg.engine
    rows = run_time_series(cfg.initial, taus, engine=engine)
    status = EXIT_OK
    if cfg.engine == "both":
        ref = run_time_series(cfg.initial, taus, engine="oracle")
        worst = max(
            float(np.max(np.abs(_row_fields(a) - _row_fields(b)))) for a, b in zip(rows, ref)
        )
        if worst > ENGINE_AGREEMENT_TOL:
            log.error("engines disagree by %.3g", worst)
            status = EXIT_VERIFY
    return [r.as_dict() for r in rows], status


def run_verify(cfg: RunConfig) -> tuple[list[dict], int]:
    lo, hi = cfg.sector_range
    rows, status = [], EXIT_OK
    # below M = 3 both propagators are the same eigendecomposition
    for M in range(max(lo, 3), hi + 1):
        for tau in cfg.tau_list:
            rep = compare_propagators(M, tau)
            rows.append({
                "M": M, "tau": rep.tau, "max_abs": rep.max_abs,
                "worst_row": rep.worst_entry[0], "worst_col": rep.worst_entry[1],
            })
            if rep.max_abs > cfg.tolerance:
                log.error("sector %d, tau %g: deviation %.3g", M, tau, rep.max_abs)
                status = EXIT_VERIFY
    return rows, status


def run_spectrum(cfg: RunConfig) -> tuple[list[dict], int]:
    lo, hi = cfg.sector_range
    rows = []
    for M in range(lo, hi + 1):
        found = sector_eigensystem(M).frequencies
        predicted = sector_frequencies(M) if M >= 3 else [None] * len(found)
        for k, (f, p) in enumerate(zip(found, predicted)):
            rows.append({"M": M, "k": k, "frequency": float(f), "predicted": p})
    return rows, EXIT_OK


RUNNERS = {
    "evolve": (run_evolve, EVOLVE_COLUMNS),
    "verify": (run_verify, VERIFY_COLUMNS),
    "spectrum": (run_spectrum, SPECTRUM_COLUMNS),
}


def run(cfg: RunConfig) -> int:
    runner, columns = RUNNERS[cfg.mode]
    try:
        rows, status = runner(cfg)
    except TruncationError as err:
        where = f" at tau={err.tau:g}" if err.tau is not None else ""
        log.error("truncation guard%s: %s", where, err)
        return EXIT_TRUNCATION
    text = render(columns, rows, cfg.format)
    if cfg.output_path == "-":
        sys.stdout.write(text)
    else:
        Path(cfg.output_path).write_text(text, newline="\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tavis3", description=__doc__.splitlines()[0])
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.add_argument("--mode", choices=["evolve", "verify", "spectrum"])
    p.add_argument("--output", help="output path, '-' for stdout")
    p.add_argument("--tolerance", type=float, help="verification threshold")
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(Path(args.config).read_text())
        overrides = {
            k: v for k, v in
            (("mode", args.mode), ("output_path", args.output), ("tolerance", args.tolerance))
            if v is not None
        }
        if overrides:
            cfg = dataclasses.replace(cfg, **overrides)
    except (OSError, ConfigError) as err:
        log.error("config error: %s", err)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
