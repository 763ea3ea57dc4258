"""Linear interpolation between a system and its two independent halves.

H_N(t) = t H_N + (1 - t) (H_N1 + H_N2). All three Hamiltonians are sector
functions of the two-block table, so alpha_N(t) and its t-derivatives are
exact sector sums:

    alpha'(t)  = -(beta/N)   omega_t[dH]
    alpha''(t) =  (beta^2/N) Var_t[dH],        dH = H_N - H_N1 - H_N2.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass

import numpy as np

from .sectors import (DEFAULT_SECTOR_BUDGET, logsumexp, model_table, sector_energies,
                      weighted_sum)


@dataclass(frozen=True)
class SplitSpec:
    N1: int
    N2: int

    def __post_init__(self):
        if self.N1 < 1 or self.N2 < 1:
            raise ValueError("a split needs two non-empty blocks")

    @property
    def N(self) -> int:
        return self.N1 + self.N2

    @classmethod
    def parse(cls, text: str) -> "SplitSpec":
        a, b = (int(v) for v in text.split(","))
        return cls(a, b)


def all_splits(N: int) -> list[SplitSpec]:
    return [SplitSpec(n1, N - n1) for n1 in range(1, N)]


class Interpolation:
    """Precomputed sector energies for one model and split."""

    def __init__(self, model, split: SplitSpec, budget: int = DEFAULT_SECTOR_BUDGET):
        self.model = model
        self.split = split
        self.table = model_table(model, split.N if model.n_sites is None else None,
                                 (split.N1, split.N2), budget=budget)
        self.H = sector_energies(model, self.table)
        self.H1 = sector_energies(model, self.table, block=0)
        self.H2 = sector_energies(model, self.table, block=1)
        self.dH = self.H - self.H1 - self.H2

    @property
    def N(self) -> int:
        return self.split.N

    def _state(self, beta, t):
        logw = self.table.log_multiplicity - beta * (self.H1 + self.H2 + t * self.dH)
        log_Z = logsumexp(logw)
        return log_Z, np.exp(logw - log_Z)

    # t is not range-checked here so finite differences may step past [0, 1]
    def alpha(self, beta, t):
        return self._state(beta, t)[0] / self.N

    def alpha_step(self, beta, t, h):
        """alpha(t + h) - alpha(t) without subtracting two nearby logs.

        Uses Z(t+h)/Z(t) = omega_t[exp(-beta h dH)], summed as expm1 terms.
        """
        _, p = self._state(beta, t)
        s = weighted_sum(p, np.expm1(-beta * h * self.dH))
        return math.log1p(s) / self.N

    def mean_dH(self, beta, t):
        _, p = self._state(beta, t)
        return weighted_sum(p, self.dH)

    def dalpha(self, beta, t):
        return -beta / self.N * self.mean_dH(beta, t)

    def d2alpha(self, beta, t):
        _, p = self._state(beta, t)
        mean = weighted_sum(p, self.dH)
        var = weighted_sum(p, (self.dH - mean) ** 2)
        return beta**2 / self.N * var

    def all_at(self, beta, t):
        log_Z, p = self._state(beta, t)
        mean = weighted_sum(p, self.dH)
        var = weighted_sum(p, (self.dH - mean) ** 2)
        return log_Z / self.N, -beta / self.N * mean, beta**2 / self.N * var


def _check_t(t):
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")


def alpha_of_t(model, split: SplitSpec, beta: float, t: float) -> float:
    _check_t(t)
    return Interpolation(model, split).alpha(beta, t)


def dalpha_dt(model, split: SplitSpec, beta: float, t: float) -> float:
    _check_t(t)
    return Interpolation(model, split).dalpha(beta, t)


def d2alpha_dt2(model, split: SplitSpec, beta: float, t: float) -> float:
    _check_t(t)
    return Interpolation(model, split).d2alpha(beta, t)


@dataclass(frozen=True)
class ConditionReport:
    split: SplitSpec
    beta: float
    gap: float
    tolerance: float

    @property
    def satisfied(self) -> bool:
        return self.gap >= -self.tolerance


def condition_check(model, split: SplitSpec, beta: float, tol: float = 1e-10,
                    interp: Interpolation | None = None) -> ConditionReport:
    """gap = omega_N(H_N) - omega_N(H_N1 + H_N2) in the full Gibbs state.

    ``tol`` is per site: the gap is extensive, so the threshold is tol * N.
    """
    interp = interp or Interpolation(model, split)
    return ConditionReport(split, beta, interp.mean_dH(beta, 1.0), tol * split.N)


@dataclass(frozen=True)
class SignReport:
    ok: bool
    endpoint_derivative: float
    offending_t: float | None


def sign_propagation_check(model, split: SplitSpec, beta: float, grid=21,
                           tol: float = 1e-10,
                           interp: Interpolation | None = None) -> SignReport:
    """If alpha'(1) <= 0 then alpha'(t) <= 0 on the whole grid.

    When alpha'(1) > 0 nothing is claimed and the check passes vacuously.
    """
    interp = interp or Interpolation(model, split)
    ts = np.linspace(0.0, 1.0, grid) if np.isscalar(grid) else np.asarray(grid)
    end = interp.dalpha(beta, 1.0)
    if end > tol:
        return SignReport(True, end, None)
    for t in ts:
        if interp.dalpha(beta, float(t)) > tol:
            return SignReport(False, end, float(t))
    return SignReport(True, end, None)


@dataclass
class InterpolationReport:
    split: SplitSpec
    beta: float
    t_grid: list
    alpha_t: list
    dalpha_analytic: list
    d2alpha_analytic: list
    condition_gap: float
    alpha_N: float
    alpha_N1: float
    alpha_N2: float

    @property
    def alpha_block_average(self) -> float:
        N1, N2 = self.split.N1, self.split.N2
        return (N1 * self.alpha_N1 + N2 * self.alpha_N2) / (N1 + N2)

    def boundary_errors(self) -> tuple[float, float]:
        """(|alpha(1) - alpha_N|, |alpha(0) - block average|)."""
        return (abs(self.alpha_t[-1] - self.alpha_N),
                abs(self.alpha_t[0] - self.alpha_block_average))

    def min_d2(self) -> float:
        return min(self.d2alpha_analytic)

    def max_d1_decrease(self) -> float:
        d = np.diff(self.dalpha_analytic)
        return float(max(0.0, -d.min())) if len(d) else 0.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["boundary"] = {"alpha_1": self.alpha_t[-1], "alpha_0": self.alpha_t[0],
                           "block_average": self.alpha_block_average}
        return out

    def csv_rows(self):
        yield ["t", "alpha", "dalpha", "d2alpha"]
        for row in zip(self.t_grid, self.alpha_t, self.dalpha_analytic,
                       self.d2alpha_analytic):
            yield [repr(float(v)) for v in row]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            csv.writer(fh).writerows(self.csv_rows())


def interpolation_report(model, split: SplitSpec, beta: float, grid=21,
                         interp: Interpolation | None = None) -> InterpolationReport:
    """alpha(t), alpha'(t), alpha''(t) on a uniform t-grid plus boundary data.

    Grid endpoints are exactly 0 and 1.
    """
    from .sectors import alpha_value

    interp = interp or Interpolation(model, split)
    ts = np.linspace(0.0, 1.0, grid) if np.isscalar(grid) else np.asarray(grid, float)
    a, d1, d2 = zip(*(interp.all_at(beta, float(t)) for t in ts))
    sub1 = model.restrict(0, split.N1)
    sub2 = model.restrict(split.N1, split.N)
    return InterpolationReport(
        split=split,
        beta=beta,
        t_grid=[float(t) for t in ts],
        alpha_t=list(a),
        dalpha_analytic=list(d1),
        d2alpha_analytic=list(d2),
        condition_gap=interp.mean_dH(beta, 1.0),
        alpha_N=alpha_value(model, split.N if model.n_sites is None else None, beta),
        alpha_N1=alpha_value(sub1, split.N1, beta),
        alpha_N2=alpha_value(sub2, split.N2, beta),
    )
