"""Condition gaps and subadditivity slack for g outside the convex class.

Nothing here is expected to hold; the script only records where the
interpolation condition and subadditivity break for concave or odd g.

    python3 scripts/concave_exploration.py --N 24 --beta 0.5 1 3
"""

import argparse

from mfspin import scalar
from mfspin.interpolation import Interpolation, all_splits
from mfspin.limits import subadditivity_scan

CASES = ("neg_square", "cube", "abs", "square")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", nargs="+", default=list(CASES))
    ap.add_argument("--N", type=int, default=24)
    ap.add_argument("--beta", nargs="+", type=float, default=[0.5, 1.0, 3.0])
    args = ap.parse_args(argv)

    print(f"{'g':<12}{'convex':>7}{'beta':>6}{'min gap':>12}{'neg splits':>11}"
          f"{'min slack':>12}")
    for name in args.g:
        model = scalar(name)
        splits = all_splits(args.N)
        interps = [Interpolation(model, s) for s in splits]
        for beta in args.beta:
            gaps = [it.mean_dH(beta, 1.0) for it in interps]
            negative = sum(gap < -1e-10 * args.N for gap in gaps)
            slack = subadditivity_scan(model, args.N, beta).min_slack
            print(f"{name:<12}{str(model.theorem_applies):>7}{beta:>6g}{min(gaps):>12.4e}"
                  f"{negative:>11}{slack:>12.4e}")


if __name__ == "__main__":
    main()
