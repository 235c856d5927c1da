#!/usr/bin/env python3
"""Sweep all one-loop presentations with |n|, |m| <= N and tabulate the case
split and the residually-finite-p decision for each requested prime.

Example:
    python scripts/sweep_r1.py --max 12 --primes 2 3 --show-residual
"""

import argparse
from collections import Counter

from rosegbs import Case, RoseGbs, classify, residually_p


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=12, help="bound on |n|, |m|")
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--show-residual", action="store_true",
                    help="list every residually finite-p pair")
    args = ap.parse_args()

    for p in args.primes:
        counts = Counter()
        xi_hist = Counter()
        residual_pairs = []
        for n in range(-args.max, args.max + 1):
            for m in range(-args.max, args.max + 1):
                if n == 0 or m == 0:
                    continue
                pres = RoseGbs.from_pairs([(n, m)])
                cls = classify(pres, p)
                if cls.case == Case.ONE:
                    counts["case1"] += 1
                    xi_hist[cls.xi] += 1
                else:
                    counts["case2"] += 1
                if residually_p(pres, p).decision:
                    counts["residually_p"] += 1
                    residual_pairs.append((n, m))
        total = counts["case1"] + counts["case2"]
        print(f"p = {p}: {total} presentations")
        print(f"  case 1: {counts['case1']}  (xi histogram: "
              f"{dict(sorted(xi_hist.items()))})")
        print(f"  case 2: {counts['case2']}")
        print(f"  residually finite-{p}: {counts['residually_p']}")
        if args.show_residual:
            print("  pairs:", " ".join(f"({n},{m})" for n, m in residual_pairs))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
