"""Write plot-ready CSVs for the high-spot, profile and convergence figures.

    python3 scripts/figure_data.py --output out/
"""
import argparse
from pathlib import Path

import numpy as np

from icefish.analysis import (bond_star_hole, bond_star_strip, first_zeros_of_derivative,
                              fundamental, sweep)
from icefish.cli import converge_rows
from icefish.io import write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--output", default="figure_data")
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--n-ref", type=int, default=2000)
    args = ap.parse_args()
    out = Path(args.output)

    bonds = np.geomspace(1.0, 1e3, args.points)
    for geometry, m in (("strip", None), ("hole", 1)):
        recs = sweep(geometry, bonds, m)
        write_csv(out / f"high_spot_{geometry}.csv",
                  ["bond", "lambda1", "high_spot", "on_boundary"],
                  [vars(r) for r in recs])

    # first two critical points of the m = 1 profile (one is always r = 1)
    rows = []
    for bo in bonds:
        z = first_zeros_of_derivative(1, float(bo))
        rows.append(dict(bond=float(bo), first=z[0], second=z[1] if len(z) > 1 else None))
    write_csv(out / "derivative_zeros.csv", ["bond", "first", "second"], rows)

    for geometry, m in (("strip", None), ("hole", 1)):
        lo = -1.0 if geometry == "strip" else 0.0
        x = np.linspace(lo, 1.0, 512)
        rows = []
        for bo in (1.0, 20.0, 100.0):
            _, prof = fundamental(geometry, m, 200, bo)
            rows += [dict(bond=bo, r=float(t), xi=float(v)) for t, v in zip(x, prof(x))]
        write_csv(out / f"profiles_{geometry}.csv", ["bond", "r", "xi"], rows)

    header = ["geometry", "m", "bond", "n", "j", "lambda_n", "lambda_ref", "lambda_err",
              "profile_err"]
    for geometry, m in (("strip", None), ("hole", 1), ("hole", 5)):
        rows = converge_rows(geometry, m, (0.1, 1.0, 10.0), (8, 16, 32, 64, 128, 256),
                             args.n_ref)
        write_csv(out / f"convergence_{geometry}{'' if m is None else m}.csv", header, rows)

    print(f"strip Bo* = {bond_star_strip():.6f}")
    print(f"hole  Bo* = {bond_star_hole(1).bond_star:.7f}")
    print(f"wrote {sorted(p.name for p in out.glob('*.csv'))}")


if __name__ == "__main__":
    main()
