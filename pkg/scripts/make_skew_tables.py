"""Regenerate the short-maturity skew tables.

Builds the ATM skew curve for each Hurst exponent on the default
log-spaced maturity grid, fits per-curve power laws a*T^(-b*(H-1/2)),
refits the shared exponent over the rough curves, and prints the result
as a small table.  Pass an output prefix to also dump CSVs.

    python3 scripts/make_skew_tables.py [out_prefix]
"""

import sys

import numpy as np

sys.path.insert(0, "src")

from adoheston.charfn import ModelParams
from adoheston.fit import fit_a_of_H, fit_power_law, fit_shared_exponent
from adoheston.kernels import hurst_constants
from adoheston.skew import skew_curve

H_GRID = (0.1, 0.2, 0.3, 0.4, 0.47, 0.5)
T_GRID = np.geomspace(0.001, 0.3, 50)


def main():
    out_prefix = sys.argv[1] if len(sys.argv) > 1 else None

    curves, fits = {}, []
    for H in H_GRID:
        mp = ModelParams(hp=hurst_constants(H))
        curves[H] = skew_curve(T_GRID, mp)
        fits.append(fit_power_law(curves[H]))

    print(f"{'H':>5} {'a':>12} {'b_scaled':>10} {'rss':>10}")
    for f in fits:
        print(f"{f.H:>5.2f} {f.a:>12.5g} {f.b_scaled:>10.4g} {f.rss:>10.3g}")

    pooled_b, per_curve = fit_shared_exponent([curves[H] for H in H_GRID if H != 0.5])
    print(f"\npooled exponent b = {pooled_b:.4f}")
    c0, c1 = fit_a_of_H(fits)
    print(f"log a(H) regression: intercept {c0:.4f}, slope {c1:.4f}")

    if out_prefix:
        for H, curve in curves.items():
            path = f"{out_prefix}_H{H:g}.csv"
            np.savetxt(
                path,
                np.column_stack([curve.maturities, curve.skews]),
                delimiter=",",
                header="T,skew",
                comments="",
            )
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
