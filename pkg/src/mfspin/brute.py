"""Literal 2^N enumeration of the partition function and Gibbs averages.

This is the reference the sector engine is tested against, so it never
goes through order-parameter classes: every Hamiltonian is evaluated from
the raw spin vector with the site-by-site formula (fields and patterns
included, distinct-index sums taken over explicit index combinations).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .models import Hopfield, PSpinPlain, PSpinTilde, RandomFieldCW, ScalarMeanField

MAX_N = 22
_CHUNK = 1 << 16


def _check(N):
    if not 1 <= N <= MAX_N:
        raise ValueError(f"brute-force enumeration is limited to 1 <= N <= {MAX_N}")


def spin_configurations(N: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows are configurations in lexicographic order, sigma_1 most significant,
    -1 before +1."""
    _check(N)
    stop = 2**N if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(N - 1, -1, -1, dtype=np.int64)
    return (((idx[:, None] >> shifts) & 1) * 2 - 1).astype(np.int8)


def raw_hamiltonian(model, spins: np.ndarray) -> np.ndarray:
    """H(sigma) for each row of ``spins``."""
    s = spins.astype(float)
    N = s.shape[1]
    if isinstance(model, ScalarMeanField):
        return -N * model.g(s.sum(axis=1) / N)
    if isinstance(model, PSpinPlain):
        # -(1/N^{p-1}) sum_{i1..ip} sigma_i1...sigma_ip = -(sum sigma)^p / N^{p-1}
        return -s.sum(axis=1) ** model.p / N ** (model.p - 1)
    if isinstance(model, PSpinTilde):
        k = model.k
        if k >= N:
            raise ValueError("tilde model needs k < N")
        total = np.zeros(len(s))
        for combo in itertools.combinations(range(N), k):
            total += s[:, combo].prod(axis=1)
        falling = math.prod(range(N - k + 1, N))
        return -math.factorial(k) * total / falling
    if isinstance(model, RandomFieldCW):
        h = np.asarray(model.h, dtype=float)
        if len(h) != N:
            raise ValueError("field length does not match N")
        # -(1/N) sum_ij sigma_i sigma_j + sum_i h_i sigma_i
        return -np.einsum("ci,cj->c", s, s) / N + s @ h
    if isinstance(model, Hopfield):
        xi = np.asarray(model.patterns, dtype=float)
        if xi.shape[1] != N:
            raise ValueError("pattern length does not match N")
        # -sum_mu (1/N) sum_ij xi_i xi_j sigma_i sigma_j
        out = np.zeros(len(s))
        for row in xi:
            out -= np.einsum("ci,cj,i,j->c", s, s, row, row, optimize=True) / N
        return out
    raise TypeError(f"no brute-force Hamiltonian for {model!r}")


@lru_cache(maxsize=256)
def energies(model, N: int) -> np.ndarray:
    _check(N)
    parts = [raw_hamiltonian(model, spin_configurations(N, lo, min(lo + _CHUNK, 2**N)))
             for lo in range(0, 2**N, _CHUNK)]
    out = np.concatenate(parts)
    out.setflags(write=False)
    return out


def _log_weights(model, N, beta):
    return -beta * energies(model, N)


def oracle_alpha(model, N: int, beta: float) -> float:
    lw = _log_weights(model, N, beta)
    top = float(lw.max())
    return (top + math.log(math.fsum(np.exp(lw - top).tolist()))) / N


def oracle_expect(model, N: int, beta: float, observable) -> float:
    """Gibbs average of ``observable(spins) -> values per row``."""
    lw = _log_weights(model, N, beta)
    w = np.exp(lw - lw.max())
    Z = math.fsum(w.tolist())
    acc = []
    for lo in range(0, 2**N, _CHUNK):
        hi = min(lo + _CHUNK, 2**N)
        vals = np.broadcast_to(
            np.asarray(observable(spin_configurations(N, lo, hi)), dtype=float),
            (hi - lo,))
        acc.extend((w[lo:hi] * vals).tolist())
    return math.fsum(acc) / Z
