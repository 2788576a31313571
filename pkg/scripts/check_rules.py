#!/usr/bin/env python3
"""Certify every rewrite rule in the catalog numerically sound.

Each rule is instantiated exhaustively at small carrier sizes and randomly
at larger ones; both sides of every instance are evaluated to dense
matrices and compared entrywise.
"""

import argparse

from grover_lab.rewrite import check_rule_soundness, rules_catalog


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,3,4,8", help="comma list of carrier sizes")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random-instances", type=int, default=100)
    args = ap.parse_args()

    sizes = [int(x) for x in args.sizes.split(",")]
    print(f"{'rule':<22} {'instances':>9} {'max_deviation':>14} {'verdict':>8}")
    worst = 0.0
    all_ok = True
    for rule in rules_catalog():
        rep = check_rule_soundness(
            rule, sizes, seed=args.seed, n_random=args.random_instances
        )
        worst = max(worst, rep.max_deviation)
        all_ok = all_ok and rep.passed
        verdict = "sound" if rep.passed else "UNSOUND"
        print(f"{rep.rule:<22} {rep.instantiations:>9} {rep.max_deviation:>14.3e} "
              f"{verdict:>8}")
        for failure in rep.failures:
            print(f"    failure: {failure}")
    print(f"\ncatalog max deviation {worst:.3e}; "
          f"{'all rules sound' if all_ok else 'SOME RULES FAILED'}")
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
