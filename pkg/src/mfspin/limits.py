"""Size ladders, running infima and the large-deviation limit oracle."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .models import PSpinTilde
from .sectors import alpha, alpha_value, build_scalar_table

_GOLD = (math.sqrt(5) - 1) / 2


def doubling_ladder(start: int = 25, steps: int = 10) -> list[int]:
    """start, 2 start, ..., start 2^(steps-1); default 25 .. 12800."""
    return [start * 2**j for j in range(steps)]


@dataclass
class ConvergenceSeries:
    entries: list            # [(N, alpha_N)]
    running_inf: list
    limit_estimate: float    # alpha at the largest N
    fit: dict = field(default_factory=dict)
    oracle_value: float | None = None

    @property
    def Ns(self):
        return [n for n, _ in self.entries]

    @property
    def alphas(self):
        return [a for _, a in self.entries]

    def max_increase(self) -> float:
        """Largest alpha_{next} - alpha_{prev} along the ladder (<= 0 when monotone)."""
        d = np.diff(self.alphas)
        return float(d.max()) if len(d) else 0.0

    def to_dict(self) -> dict:
        return {"entries": [list(e) for e in self.entries],
                "running_inf": self.running_inf,
                "limit_estimate": self.limit_estimate,
                "fit": self.fit, "oracle_value": self.oracle_value}

    def csv_rows(self):
        yield ["N", "alpha_N", "running_inf"]
        for (n, a), r in zip(self.entries, self.running_inf):
            yield [n, repr(a), repr(r)]

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            csv.writer(fh).writerows(self.csv_rows())


def _model_at(model, N):
    if model.n_sites is None:
        return model, N
    if N > model.n_sites:
        raise ValueError(f"ladder reaches N={N} beyond the {model.n_sites} disorder sites")
    return model.restrict(0, N), None


def fit_limit(Ns, alphas) -> dict:
    """Least squares alpha_N = a + b/N + c ln(N)/N on the top half of the ladder.

    Heuristic rate model; the residual is reported alongside.
    """
    Ns = np.asarray(Ns, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    top = len(Ns) // 2
    Ns, alphas = Ns[top:], alphas[top:]
    if len(Ns) < 3:
        return {}
    A = np.column_stack([np.ones_like(Ns), 1 / Ns, np.log(Ns) / Ns])
    coef, *_ = np.linalg.lstsq(A, alphas, rcond=None)
    resid = float(np.max(np.abs(A @ coef - alphas)))
    return {"alpha_inf": float(coef[0]), "a": float(coef[1]), "b": float(coef[2]),
            "max_residual": resid, "points": len(Ns)}


def ladder(model, N_values, beta: float, oracle: bool = True) -> ConvergenceSeries:
    N_values = list(N_values)
    if any(b <= a for a, b in zip(N_values, N_values[1:])):
        raise ValueError("N values must be strictly increasing")
    entries = []
    for N in N_values:
        m, n = _model_at(model, N)
        entries.append((N, alpha_value(m, n, beta)))
    running = list(np.minimum.accumulate([a for _, a in entries]))
    series = ConvergenceSeries(entries, [float(r) for r in running], entries[-1][1],
                               fit_limit(N_values, [a for _, a in entries]))
    g = getattr(model, "g", None)
    if oracle and g is not None and model.n_sites is None:
        series.oracle_value = variational_oracle(g, beta)
    return series


def binary_entropy(m):
    """s(m) for magnetization m, with 0 ln 0 = 0 at m = +-1."""
    m = np.asarray(m, dtype=float)
    p, q = (1 + m) / 2, (1 - m) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        tp = np.where(p > 0, p * np.log(np.where(p > 0, p, 1)), 0.0)
        tq = np.where(q > 0, q * np.log(np.where(q > 0, q, 1)), 0.0)
    return -(tp + tq)


def variational_oracle(g, beta: float, seed_points: int = 10_001, tol: float = 1e-14) -> float:
    """max_{m in [-1,1]} beta g(m) + s(m).

    Seed grid followed by golden-section refinement on the bracket around
    the best grid point.
    """
    f = lambda m: float(beta * g(np.array(m)) + binary_entropy(m))  # noqa: E731
    xs = np.linspace(-1.0, 1.0, seed_points)
    vals = beta * g(xs) + binary_entropy(xs)
    i = int(np.argmax(vals))
    best = float(vals[i])
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    c, d = b - _GOLD * (b - a), a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
    return max(best, fc, fd, f((a + b) / 2))


@dataclass(frozen=True)
class SlackReport:
    N: int
    beta: float
    min_slack: float
    worst_N1: int
    slacks: tuple


def subadditivity_scan(model, N: int, beta: float) -> SlackReport:
    """min over N1 of (N1 a_N1 + N2 a_N2)/N - a_N."""
    if N < 2:
        raise ValueError("need N >= 2")
    if model.n_sites is None:
        # one scalar table per size; alpha_n reused across splits
        lo = model.k + 1 if isinstance(model, PSpinTilde) else 1
        a = {n: alpha(model, build_scalar_table(n), beta).alpha for n in range(lo, N + 1)}
        pieces = lambda n1: (a[n1], a[N - n1])  # noqa: E731
        aN = a[N]
        splits = range(lo, N - lo + 1)
    else:
        if N != model.n_sites:
            raise ValueError("disordered scan runs on the model's own N")
        aN = alpha_value(model, None, beta)
        pieces = lambda n1: (alpha_value(model.restrict(0, n1), None, beta),  # noqa: E731
                             alpha_value(model.restrict(n1, N), None, beta))
        splits = range(1, N)
    slacks = []
    for n1 in splits:
        a1, a2 = pieces(n1)
        slacks.append((n1 * a1 + (N - n1) * a2) / N - aN)
    j = int(np.argmin(slacks))
    return SlackReport(N, beta, float(slacks[j]), list(splits)[j], tuple(slacks))
