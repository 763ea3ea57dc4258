"""Quenched alpha_N for random-field CW or Hopfield disorder across sizes.

    python3 scripts/quenched_scan.py --kind patterns --M 2 --N 8 16 24 --samples 200
"""

import argparse
import os

from mfspin.disorder import KINDS, quenched_average


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", choices=KINDS, default="random-field")
    ap.add_argument("--M", type=int, default=2)
    ap.add_argument("--N", nargs="+", type=int, default=[8, 16, 32, 64])
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args(argv)

    print(f"{'N':>5}{'mean alpha':>14}{'std err':>12}{'failures':>10}")
    for N in args.N:
        est = quenched_average(args.kind, N, args.beta, args.samples, args.seed,
                               M=args.M, workers=args.workers)
        print(f"{N:>5}{est.mean_alpha:>14.8f}{est.std_error:>12.2e}"
              f"{est.per_sample_subadditivity_failures:>10}")


if __name__ == "__main__":
    main()
