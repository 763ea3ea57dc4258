"""Wall-clock timings for the sector engine on the largest routine sizes."""

import time

from mfspin import PSpinTilde, SplitSpec, scalar
from mfspin.disorder import sample_disorder
from mfspin.interpolation import interpolation_report
from mfspin.sectors import alpha_value


def timed(label, fn):
    t0 = time.perf_counter()
    fn()
    print(f"{label:<44}{time.perf_counter() - t0:>9.3f} s")


def main():
    timed("scalar x^2 alpha, N=1e5", lambda: alpha_value(scalar("square"), 100_000, 1.0))
    timed("tilde k=4 alpha, N=1e5", lambda: alpha_value(PSpinTilde(4), 100_000, 1.0))
    timed("interpolation report x^2, N=2000, 21 t", lambda: interpolation_report(
        scalar("square"), SplitSpec(1000, 1000), 1.0, grid=21))
    hop = sample_disorder(0, "patterns", 60, M=2).model()
    timed("Hopfield M=2 alpha, N=60", lambda: alpha_value(hop, None, 1.0))
    rf = sample_disorder(0, "random-field", 400).model()
    timed("random-field CW alpha, N=400", lambda: alpha_value(rf, None, 1.0))


if __name__ == "__main__":
    main()
