"""Print the eigenvalue, iteration-count and critical-Bond tables.

    python3 scripts/reproduce_tables.py [--quick]

--quick skips the slow n = 200 eigenvalue tables.
"""
import argparse
import math
import time

from icefish.analysis import bond_star_hole, get_system
from icefish.gevp import solve_gevp

BONDS = (1.0, 10.0, 50.0, math.inf)


def eig_table(geometry, m, n=200):
    sys_ = get_system(geometry, m, n)
    cols = [solve_gevp(sys_, bo, 3).lambdas for bo in BONDS]
    print(f"\n{geometry}" + (f" m={m}" if m is not None else "") + f", n={n}")
    print("      " + "".join(f"{'Bo=' + ('inf' if math.isinf(b) else f'{b:g}'):>14}" for b in BONDS))
    for j in range(3):
        print(f"j={j + 1}  " + "".join(f"{c[j]:14.4f}" for c in cols))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    t0 = time.perf_counter()
    if not args.quick:
        eig_table("strip", None)
        for m in (0, 1, 10):
            eig_table("hole", m)

    print("\niterations to |dx| <= 1e-14, n=20")
    print("         " + "".join(f"{'m=' + str(m):>8}" for m in range(1, 6)))
    for alpha in (2, 3, 5, 10):
        its = [bond_star_hole(m, float(alpha), 20).iterations for m in range(1, 6)]
        print(f"alpha={alpha:<3}" + "".join(f"{k:8d}" for k in its))

    print("\ncritical Bond number, alpha=2")
    print("        " + "".join(f"{'m=' + str(m):>12}" for m in range(1, 6)))
    for n in (5, 20, 80):
        vals = [bond_star_hole(m, 2.0, n).bond_star for m in range(1, 6)]
        print(f"n={n:<5}" + "".join(f"{v:12.7f}" for v in vals))
    print(f"\n({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
