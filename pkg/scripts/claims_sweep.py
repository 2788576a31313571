#!/usr/bin/env python3
"""Sweep the closed-form amplitude claims over register sizes.

Prints one row per n with the model's unmarked amplitude, its square, the
total unmarked mass it implies, and — where the exact simulator is cheap
enough — the measured marked probability at k = round(sqrt(2^n)).
"""

import argparse

from grover_lab.analysis import paper_claims_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=20)
    args = ap.parse_args()

    report = paper_claims_check(args.n_min, args.n_max)
    print(f"{'n':>3} {'A':>14} {'A^2':>12} {'total_unmarked':>15} "
          f"{'sim_marked':>11} {'>1/2':>5}")
    for r in report.records:
        sim = "-" if r.simulator_marked is None else f"{r.simulator_marked:.6f}"
        half = "-" if r.marked_ge_half is None else ("yes" if r.marked_ge_half else "NO")
        print(f"{r.n:>3} {r.A:>14.6e} {r.A_squared:>12.4e} "
              f"{r.total_unmarked:>15.6e} {sim:>11} {half:>5}")
    print()
    for name, verdict in sorted(report.verdicts.items()):
        print(f"verdict {name}: {verdict}")


if __name__ == "__main__":
    main()
