"""Symmetrized p-spin Hamiltonian over pairwise-distinct index tuples.

For spins in {-1, +1} every power sum collapses to either the spin sum S
(odd order) or N (even order), so the elementary symmetric polynomials,
and with them the distinct-tuple sums, follow from Newton's identities in
O(k^2) work per sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

MAX_ORDER = 20


def _check_sum(N: int, S: int) -> None:
    if N < 1:
        raise ValueError("N must be >= 1")
    if abs(S) > N or (N - S) % 2:
        raise ValueError(f"spin sum S={S} is not achievable with N={N} spins")


def power_sums(N: int, S: int, k: int) -> list[int]:
    """P_j = sum_i sigma_i^j for j = 1..k."""
    _check_sum(N, S)
    return [S if j % 2 else N for j in range(1, k + 1)]


def _elementary(N, S, k):
    # Newton: j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} P_i
    P = power_sums(N, S, k)
    e = [1]
    for j in range(1, k + 1):
        total = sum((-1) ** (i - 1) * e[j - i] * P[i - 1] for i in range(1, j + 1))
        q, r = divmod(total, j)
        assert r == 0
        e.append(q)
    return e


@dataclass(frozen=True)
class DistinctTupleSum:
    N: int
    k: int
    S: int
    value: int


def distinct_tuple_sum(N: int, S: int, k: int) -> DistinctTupleSum:
    """Sum of sigma_{i1}...sigma_{ik} over ordered pairwise-distinct tuples.

    Exact integer arithmetic: value = k! e_k(sigma).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > N:
        raise ValueError(f"order k={k} exceeds N={N}")
    e = _elementary(N, S, k)
    return DistinctTupleSum(N, k, S, math.factorial(k) * e[k])


def tilde_hamiltonian(N: int, S: int, k: int) -> float:
    if k >= N:
        raise ValueError(f"tilde Hamiltonian needs k < N (k={k}, N={N})")
    # exact rational, rounded once
    value = distinct_tuple_sum(N, S, k).value
    return -float(Fraction(value, math.perm(N - 1, k - 1)))


def tilde_hamiltonian_array(N: int, S, k: int) -> np.ndarray:
    """Vectorized tilde Hamiltonian over an array of spin sums (floats)."""
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"order k must lie in [1, {MAX_ORDER}]")
    if k >= N:
        raise ValueError(f"tilde Hamiltonian needs k < N (k={k}, N={N})")
    S = np.asarray(S, dtype=float)
    P = [S if j % 2 else np.full_like(S, float(N)) for j in range(1, k + 1)]
    e = [np.ones_like(S)]
    for j in range(1, k + 1):
        acc = np.zeros_like(S)
        for i in range(1, j + 1):
            acc += (-1) ** (i - 1) * e[j - i] * P[i - 1]
        e.append(acc / j)
    # k! / (N-1)...(N-k+1) as a correctly rounded ratio of exact integers;
    # exp(lgamma difference) loses ~1e-11 relative accuracy at N ~ 1e4
    return -e[k] * (math.factorial(k) / math.perm(N - 1, k - 1))


def correction_gap(N: int, k: int, samples: Iterable[int] | None = None) -> float:
    """max |H_N - H~_N| over the sampled spin sums, H_N = -N m^k."""
    if k == 1:
        return 0.0
    if samples is None:
        samples = range(-N, N + 1, 2)
    worst = 0.0
    for S in samples:
        plain = -N * (S / N) ** k
        worst = max(worst, abs(plain - tilde_hamiltonian(N, S, k)))
    return worst


def tilde_split_defect(N1: int, N2: int, k: int, beta: float) -> float:
    """omega_N(H~_N - H~_N1 - H~_N2) under the full tilde Gibbs state.

    Permutation invariance makes this vanish identically.
    """
    from .interpolation import SplitSpec, condition_check
    from .models import PSpinTilde

    if k >= min(N1, N2):
        raise ValueError(f"blocks ({N1}, {N2}) too small for order k={k}")
    return condition_check(PSpinTilde(k), SplitSpec(N1, N2), beta).gap
