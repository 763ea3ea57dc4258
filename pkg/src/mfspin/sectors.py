"""Collapse of the 2^N configuration sum onto order-parameter sectors.

Sites are grouped into classes whose spins enter the order parameters with
the same signature vector. A sector fixes the number of up spins in every
class; its multiplicity is the product of per-class binomials. Classes are
further assigned to blocks so that the same table serves the interpolation
between a system and its two halves.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, logsumexp as _sp_logsumexp

DEFAULT_SECTOR_BUDGET = 10**8

# Weights below this fraction of the largest one are dropped before exact
# summation. A million of them move the sum by < 1e-34, far below one ulp,
# while keeping them makes fsum track hundreds of exponent ranges.
NEGLIGIBLE = 1e-40


class SectorBudgetError(RuntimeError):
    pass


def logsumexp(values) -> float:
    """log sum exp(values), with a correctly rounded final sum (math.fsum).

    The rounded sum does not depend on summation order, so the result is
    reproducible however the sectors are partitioned.
    """
    values = np.asarray(values, dtype=float)
    top = float(np.max(values))
    if not math.isfinite(top):
        return top
    shifted = values - top
    kept = np.exp(shifted[shifted > math.log(NEGLIGIBLE)])
    return top + math.log(math.fsum(kept.tolist()))


def weighted_sum(p, values) -> float:
    """sum p * values over the non-negligible probabilities, exactly rounded."""
    p = np.asarray(p, dtype=float)
    keep = p >= NEGLIGIBLE
    return math.fsum((p[keep] * np.broadcast_to(values, p.shape)[keep]).tolist())


def log_binomial(n, k) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


@dataclass(frozen=True, eq=False)
class SectorTable:
    class_sizes: np.ndarray      # (C,)
    signatures: np.ndarray       # (C, d)
    class_block: np.ndarray      # (C,) block index of each class
    block_sizes: tuple[int, ...]
    counts: np.ndarray           # (S, C) up spins per class, C-order product
    log_multiplicity: np.ndarray  # (S,)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def N(self) -> int:
        return int(sum(self.block_sizes))

    @property
    def n_sectors(self) -> int:
        return len(self.log_multiplicity)

    @property
    def dim(self) -> int:
        return self.signatures.shape[1]

    def spin_sums(self, block: int | None = None) -> np.ndarray:
        """Signed class sums sum_c sig_c (2 k_c - n_c), shape (S, d)."""
        key = ("sums", block)
        if key not in self._cache:
            net = 2 * self.counts - self.class_sizes[None, :]
            sig = self.signatures
            if block is not None:
                sig = sig * (self.class_block == block)[:, None]
            self._cache[key] = net.astype(float) @ sig
        return self._cache[key]

    def order_point(self, block: int | None = None) -> np.ndarray:
        n = self.N if block is None else self.block_sizes[block]
        return self.spin_sums(block) / n

    def total_log_multiplicity(self) -> float:
        return logsumexp(self.log_multiplicity)

    def exact_total_multiplicity(self) -> int:
        """Integer sum of multiplicities; only for N <= 30."""
        if self.N > 30:
            raise ValueError("exact multiplicity check is limited to N <= 30")
        total = 0
        sizes = self.class_sizes.tolist()
        for row in self.counts.tolist():
            term = 1
            for n, k in zip(sizes, row):
                term *= math.comb(n, k)
            total += term
        return total

    def marginal_log_multiplicity(self, keep) -> np.ndarray:
        """Log multiplicities summed over every class not in ``keep``."""
        keep = sorted(np.atleast_1d(keep).tolist())
        shape = tuple(int(n) + 1 for n in self.class_sizes)
        grid = self.log_multiplicity.reshape(shape)
        drop = tuple(i for i in range(len(shape)) if i not in keep)
        return _sp_logsumexp(grid, axis=drop).ravel() if drop else grid.ravel()

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            C, d = self.counts.shape[1], self.dim
            w.writerow([f"k{c}" for c in range(C)] + ["log_multiplicity"]
                       + [f"m{j}" for j in range(d)])
            pts = self.order_point()
            for row, lm, pt in zip(self.counts.tolist(), self.log_multiplicity.tolist(),
                                   pts.tolist()):
                w.writerow(row + [repr(lm)] + [repr(v) for v in pt])


def build_class_table(class_sizes, class_signatures, class_block=None,
                      block_sizes=None, budget: int = DEFAULT_SECTOR_BUDGET) -> SectorTable:
    sizes = np.asarray(class_sizes, dtype=np.int64)
    sigs = np.asarray(class_signatures, dtype=float)
    if sigs.ndim != 2 or sigs.shape[0] != sizes.shape[0]:
        raise ValueError("need exactly one signature vector per class")
    if sizes.size == 0 or np.any(sizes < 1):
        raise ValueError("class sizes must be positive")
    if class_block is None:
        class_block = np.zeros(len(sizes), dtype=int)
    class_block = np.asarray(class_block, dtype=int)
    if block_sizes is None:
        block_sizes = tuple(int(sizes[class_block == b].sum())
                            for b in range(class_block.max() + 1))
    block_sizes = tuple(int(b) for b in block_sizes)
    if any(b < 1 for b in block_sizes):
        raise ValueError("block sizes must be positive")
    if sum(block_sizes) != int(sizes.sum()):
        raise ValueError("block sizes must add up to the class sizes")
    n_sectors = math.prod(int(n) + 1 for n in sizes)
    if n_sectors > budget:
        raise SectorBudgetError(f"{n_sectors} sectors exceed the budget of {budget}")

    axes = [np.arange(n + 1) for n in sizes.tolist()]
    counts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(sizes))
    logm = np.zeros(len(counts))
    for c, n in enumerate(sizes.tolist()):
        logm += log_binomial(n, np.arange(n + 1))[counts[:, c]]
    return SectorTable(sizes, sigs, class_block, block_sizes, counts, logm)


def build_scalar_table(N: int) -> SectorTable:
    if N < 1:
        raise ValueError("N must be >= 1")
    return build_class_table([N], [[1.0]])


def build_two_block_table(N1: int, N2: int) -> SectorTable:
    if N1 < 1 or N2 < 1:
        raise ValueError("both blocks must be non-empty")
    return build_class_table([N1, N2], [[1.0], [1.0]], [0, 1], (N1, N2))


def model_table(model, N: int | None = None, split=None,
                budget: int = DEFAULT_SECTOR_BUDGET) -> SectorTable:
    """Sector table for ``model`` on N sites, optionally split in two blocks."""
    if N is None:
        N = model.n_sites
    model.check_size(N)
    if split is None:
        parts = [(0, N)]
    else:
        N1, N2 = split
        if N1 < 1 or N2 < 1 or N1 + N2 != N:
            raise ValueError(f"split ({N1}, {N2}) is not a partition of N={N} "
                             "into two non-empty blocks")
        parts = [(0, N1), (N1, N)]
    sizes, sigs, owner = [], [], []
    for b, (lo, hi) in enumerate(parts):
        for n, s in model.classes(lo, hi):
            sizes.append(n)
            sigs.append(s)
            owner.append(b)
    return build_class_table(sizes, sigs, owner, tuple(hi - lo for lo, hi in parts),
                             budget=budget)


def sector_energies(model, table: SectorTable, block: int | None = None) -> np.ndarray:
    if table.dim != model.dim:
        raise ValueError(f"table has {table.dim} order parameters, model needs {model.dim}")
    n = table.N if block is None else table.block_sizes[block]
    return np.asarray(model.energy(n, table.spin_sums(block)), dtype=float)


@dataclass(frozen=True, eq=False)
class GibbsSummary:
    beta: float
    log_Z: float
    alpha: float
    expectations: dict
    probabilities: np.ndarray = field(repr=False)


def _gibbs(logm, energies, beta):
    logw = logm - beta * energies
    log_Z = logsumexp(logw)
    return log_Z, np.exp(logw - log_Z)


def alpha(model, table: SectorTable, beta: float) -> GibbsSummary:
    """Partition function and free-energy density alpha_N = ln Z_N / N."""
    E = sector_energies(model, table)
    log_Z, p = _gibbs(table.log_multiplicity, E, beta)
    expectations = {"H": weighted_sum(p, E)}
    pts = table.order_point()
    for j in range(table.dim):
        expectations[f"m{j}"] = weighted_sum(p, pts[:, j])
    return GibbsSummary(beta, log_Z, log_Z / table.N, expectations, p)


def alpha_value(model, N: int | None = None, beta: float = 1.0, **kw) -> float:
    """alpha_N straight from the model, building the table on the way."""
    table = model_table(model, N, **kw)
    return alpha(model, table, beta).alpha


def gibbs_expect(model, table: SectorTable, beta: float, observable) -> float:
    """omega_N(O) for an observable constant on sectors.

    ``observable`` is either an array of per-sector values or a callable
    taking the table and returning one.
    """
    values = observable(table) if callable(observable) else observable
    values = np.broadcast_to(np.asarray(values, dtype=float), (table.n_sectors,))
    if not np.all(np.isfinite(values)):
        raise ValueError("observable is undefined on some sector")
    _, p = _gibbs(table.log_multiplicity, sector_energies(model, table), beta)
    return weighted_sum(p, values)


def achievable_gmax(model, N: int | None = None) -> float:
    """max over achievable sectors of -H/N, i.e. of g(m) for g-models."""
    table = model_table(model, N)
    return float(np.max(-sector_energies(model, table) / table.N))
