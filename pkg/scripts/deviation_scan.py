"""Closed-form vs eigendecomposition deviation over a grid of sectors and times."""

import argparse

import numpy as np

from tavis3.oracle import compare_propagators


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-sector", type=int, default=200)
    p.add_argument("--taus", type=float, nargs="+", default=[0.1, 1, 10, 100, 1000])
    args = p.parse_args()

    print(f"{'tau':>8} {'worst M':>8} {'max |dU|':>12}")
    for tau in args.taus:
        reports = [compare_propagators(M, tau) for M in range(3, args.max_sector + 1)]
        worst = max(reports, key=lambda r: r.max_abs)
        print(f"{tau:8g} {worst.M:8d} {worst.max_abs:12.3e}")
    all_dev = np.array([compare_propagators(M, 1.0).max_abs for M in range(3, args.max_sector + 1)])
    print(f"tau=1 median over sectors: {np.median(all_dev):.3e}")


if __name__ == "__main__":
    main()
