"""Atomic inversion of three atoms driven by a coherent field.

    python scripts/collapse_revival.py --alpha 4 --atoms ggg --stop 60 --plot inversion.png
"""

import argparse
import math

import numpy as np

from tavis3.dynamics import CoherentField, InitialStateSpec, run_time_series


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--alpha", type=float, default=4.0)
    p.add_argument("--atoms", default="ggg")
    p.add_argument("--stop", type=float, default=60.0)
    p.add_argument("--points", type=int, default=3000)
    p.add_argument("--engine", choices=["analytic", "oracle"], default="analytic")
    p.add_argument("--plot", help="write a PNG of the inversion trace")
    args = p.parse_args()

    cutoff = math.ceil(args.alpha**2 + 8 * args.alpha) + 4
    spec = InitialStateSpec(args.atoms, CoherentField(complex(args.alpha)), cutoff)
    taus = np.linspace(0, args.stop, args.points)
    rows = run_time_series(spec, taus, engine=args.engine)
    inversion = np.array([r.inversion for r in rows])

    print(f"cutoff {cutoff}, <n>(0) = {rows[0].mean_photons:.6f}")
    print(f"inversion range [{inversion.min():+.4f}, {inversion.max():+.4f}]")
    print(f"max norm drift {max(abs(1 - r.norm2) for r in rows):.2e}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(8, 3))
        ax.plot(taus, inversion, lw=0.7)
        ax.set_xlabel(r"$\gamma t$")
        ax.set_ylabel(r"$\langle \sum_i \sigma^z_i \rangle$")
        ax.set_title(f"three atoms, coherent field alpha = {args.alpha:g}")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
