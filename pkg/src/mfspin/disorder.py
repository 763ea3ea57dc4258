"""Seeded +-1 disorder, pointwise subadditivity and quenched averages."""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .interpolation import SplitSpec
from .models import Hopfield, RandomFieldCW
from .sectors import DEFAULT_SECTOR_BUDGET, alpha_value

KINDS = ("random-field", "patterns", "uniform-field")


@dataclass(frozen=True, eq=False)
class DisorderSample:
    seed: int
    index: int
    kind: str
    values: np.ndarray

    def model(self):
        if self.kind == "patterns":
            return Hopfield(tuple(map(tuple, self.values.tolist())))
        return RandomFieldCW(tuple(self.values.tolist()))


def sample_disorder(seed: int, kind: str, N: int, M: int = 1,
                    index: int = 0) -> DisorderSample:
    """Symmetric Bernoulli +-1 draws.

    Sample ``index`` of a run uses a stream derived from (seed, index)
    through numpy's SeedSequence hashing, so it does not depend on which
    worker computes it. ``uniform-field`` is the degenerate h = +1 case.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown disorder kind {kind!r}")
    if N < 1 or (kind == "patterns" and M < 1):
        raise ValueError("need N >= 1 and M >= 1")
    if kind == "uniform-field":
        return DisorderSample(seed, index, kind, np.ones(N, dtype=np.int8))
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    shape = (M, N) if kind == "patterns" else (N,)
    values = (rng.integers(0, 2, size=shape, dtype=np.int8) * 2 - 1).astype(np.int8)
    return DisorderSample(seed, index, kind, values)


@dataclass(frozen=True)
class SubadditivityReport:
    seed: int
    index: int
    alpha_N: float
    alpha_N1: float
    alpha_N2: float
    slack: float      # (N1 a_N1 + N2 a_N2)/N - a_N
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.slack >= -self.tolerance


def pointwise_subadditivity(model, split: SplitSpec, beta: float, tol: float = 1e-9,
                            budget: int = DEFAULT_SECTOR_BUDGET,
                            seed: int = -1, index: int = -1) -> SubadditivityReport:
    """alpha_N(h) <= (N1/N) alpha_N1(h) + (N2/N) alpha_N2(h) for one realization.

    Each block keeps the disorder of its own sites. ``tol`` is per site.
    """
    N = model.n_sites
    if split.N != N:
        raise ValueError(f"split {split} does not partition the {N} sites")
    a = alpha_value(model, None, beta, budget=budget)
    a1 = alpha_value(model.restrict(0, split.N1), None, beta, budget=budget)
    a2 = alpha_value(model.restrict(split.N1, N), None, beta, budget=budget)
    slack = (split.N1 * a1 + split.N2 * a2) / N - a
    return SubadditivityReport(seed, index, a, a1, a2, slack, tol * N)


@dataclass(frozen=True)
class QuenchedEstimate:
    sample_count: int
    mean_alpha: float
    std_error: float
    per_sample_subadditivity_failures: int
    samples: tuple = ()

    def to_dict(self, with_samples=False) -> dict:
        out = {"sample_count": self.sample_count, "mean_alpha": self.mean_alpha,
               "std_error": self.std_error,
               "per_sample_subadditivity_failures":
                   self.per_sample_subadditivity_failures}
        if with_samples:
            out["samples"] = [r.__dict__ for r in self.samples]
        return out


def _one(args):
    kind, N, M, beta, base_seed, i, split, tol = args
    sample = sample_disorder(base_seed, kind, N, M, index=i)
    return pointwise_subadditivity(sample.model(), split, beta, tol,
                                   seed=base_seed, index=i)


def quenched_average(kind: str, N: int, beta: float, sample_count: int,
                     base_seed: int, M: int = 2, split: SplitSpec | None = None,
                     workers: int = 1, tol: float = 1e-9) -> QuenchedEstimate:
    """Mean and standard error of alpha_N over disorder samples.

    Every sample is also checked for subadditivity on ``split`` (default:
    two halves). Results are aggregated in sample-index order.
    """
    if sample_count < 2:
        raise ValueError("need at least two samples")
    if N < 2:
        raise ValueError("need N >= 2 to split the system")
    split = split or SplitSpec(N // 2, N - N // 2)
    jobs = [(kind, N, M, beta, base_seed, i, split, tol) for i in range(sample_count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        reports = [_one(j) for j in jobs]
    alphas = [r.alpha_N for r in reports]
    mean = math.fsum(alphas) / len(alphas)
    stderr = statistics.stdev(alphas) / math.sqrt(len(alphas))
    failures = sum(not r.ok for r in reports)
    return QuenchedEstimate(len(reports), mean, stderr, failures, tuple(reports))
