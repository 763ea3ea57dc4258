"""Mean-field model families.

A model exposes its order-parameter structure to the sector engine through
two methods:

``classes(start, stop)``
    groups the sites in ``[start, stop)`` into classes of identical
    order-parameter signature, returning ``[(size, signature), ...]``.
``energy(n, spin_sums)``
    the Hamiltonian of an ``n``-site system whose signed class sums are
    ``spin_sums`` (shape ``(..., dim)``). For g-models this is
    ``-n * g(spin_sums / n)``.

Disordered models carry their fields/patterns explicitly; ``restrict``
returns the model on a contiguous block of sites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .gfunctions import Builtin, GFunction, Polynomial, gfunction_from_dict
from .symmetric import tilde_hamiltonian_array


@dataclass(frozen=True)
class ScalarMeanField:
    g: GFunction
    dim = 1
    n_sites = None

    @property
    def bound(self) -> float:
        return self.g.bound

    @property
    def theorem_applies(self) -> bool:
        return self.g.is_convex()

    def classes(self, start, stop):
        return [(stop - start, (1.0,))]

    def energy(self, n, spin_sums):
        return -n * self.g(np.asarray(spin_sums)[..., 0] / n)

    def gvalue(self, points):
        return self.g(np.asarray(points)[..., 0])

    def restrict(self, start, stop):
        return self

    def check_size(self, N):
        if N < 1:
            raise ValueError("N must be >= 1")


@dataclass(frozen=True)
class PSpinPlain:
    """g(x) = x^p."""

    p: int
    dim = 1
    n_sites = None

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")

    @property
    def g(self) -> Polynomial:
        return Polynomial((0.0,) * self.p + (1.0,))

    @property
    def bound(self) -> float:
        return 1.0

    @property
    def theorem_applies(self) -> bool:
        return self.p == 1 or self.p % 2 == 0

    def classes(self, start, stop):
        return [(stop - start, (1.0,))]

    def energy(self, n, spin_sums):
        return -n * (np.asarray(spin_sums, dtype=float)[..., 0] / n) ** self.p

    def gvalue(self, points):
        return np.asarray(points, dtype=float)[..., 0] ** self.p

    def restrict(self, start, stop):
        return self

    def check_size(self, N):
        # x^p is a bounded g for every N, so blocks smaller than p are allowed
        if N < 1:
            raise ValueError("N must be >= 1")


@dataclass(frozen=True)
class PSpinTilde:
    """p-spin interaction restricted to pairwise-distinct indices."""

    k: int
    dim = 1
    n_sites = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def bound(self) -> float:
        return 1.0

    @property
    def theorem_applies(self) -> bool:
        return True

    def classes(self, start, stop):
        return [(stop - start, (1.0,))]

    def energy(self, n, spin_sums):
        return tilde_hamiltonian_array(n, np.asarray(spin_sums)[..., 0], self.k)

    def restrict(self, start, stop):
        return self

    def check_size(self, N):
        if self.k >= N:
            raise ValueError(f"tilde model needs k < N (k={self.k}, N={N})")


def _pm1_tuple(values, name):
    arr = np.asarray(values)
    if arr.size and not np.all(np.isin(arr, (-1, 1))):
        raise ValueError(f"{name} entries must be exactly +1 or -1")
    return arr.astype(int)


@dataclass(frozen=True)
class RandomFieldCW:
    """Curie-Weiss with a +-1 field; g(m+, m-) = (m+ + m-)^2 - (m+ - m-)."""

    h: tuple[int, ...]
    dim = 2

    def __post_init__(self):
        arr = _pm1_tuple(self.h, "h")
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("h must be a non-empty vector")
        object.__setattr__(self, "h", tuple(arr.tolist()))

    @property
    def n_sites(self) -> int:
        return len(self.h)

    @property
    def bound(self) -> float:
        return 2.0

    @property
    def theorem_applies(self) -> bool:
        return True

    def classes(self, start, stop):
        block = self.h[start:stop]
        plus = sum(1 for v in block if v == 1)
        out = []
        if plus:
            out.append((plus, (1.0, 0.0)))
        if len(block) - plus:
            out.append((len(block) - plus, (0.0, 1.0)))
        return out

    def gvalue(self, points):
        points = np.asarray(points, dtype=float)
        mp, mm = points[..., 0], points[..., 1]
        return (mp + mm) ** 2 - (mp - mm)

    def energy(self, n, spin_sums):
        return -n * self.gvalue(np.asarray(spin_sums, dtype=float) / n)

    def restrict(self, start, stop):
        return RandomFieldCW(self.h[start:stop])

    def check_size(self, N):
        if N != self.n_sites:
            raise ValueError(f"model has {self.n_sites} sites, asked for N={N}")


@dataclass(frozen=True)
class Hopfield:
    """Finite-pattern Hopfield model, g(m^1..m^M) = sum_mu (m^mu)^2."""

    patterns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        arr = _pm1_tuple(self.patterns, "patterns")
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("patterns must be an M x N matrix with M, N >= 1")
        object.__setattr__(self, "patterns", tuple(map(tuple, arr.tolist())))

    @property
    def M(self) -> int:
        return len(self.patterns)

    @property
    def dim(self) -> int:
        return self.M

    @property
    def n_sites(self) -> int:
        return len(self.patterns[0])

    @property
    def bound(self) -> float:
        return float(self.M)

    @property
    def theorem_applies(self) -> bool:
        return True

    def classes(self, start, stop):
        cols = np.asarray(self.patterns)[:, start:stop].T
        if cols.shape[0] == 0:
            return []
        sigs, sizes = np.unique(cols, axis=0, return_counts=True)
        return [(int(n), tuple(float(v) for v in s)) for s, n in zip(sigs, sizes)]

    def gvalue(self, points):
        return np.sum(np.asarray(points, dtype=float) ** 2, axis=-1)

    def energy(self, n, spin_sums):
        return -n * self.gvalue(np.asarray(spin_sums, dtype=float) / n)

    def restrict(self, start, stop):
        return Hopfield(tuple(row[start:stop] for row in self.patterns))

    def check_size(self, N):
        if N != self.n_sites:
            raise ValueError(f"model has {self.n_sites} sites, asked for N={N}")


ModelSpec = ScalarMeanField | PSpinPlain | PSpinTilde | RandomFieldCW | Hopfield


def hamiltonian_density(model, point, sizes=None) -> float:
    """H/N at an order-parameter point.

    ``sizes`` (an int or a sequence of block sizes) is only needed by the
    tilde model, whose density depends on N.
    """
    point = np.atleast_1d(np.asarray(point, dtype=float))
    if point.shape != (model.dim,):
        raise ValueError(f"point has shape {point.shape}, model needs ({model.dim},)")
    if np.any(np.abs(point) > 1.0 + 1e-12):
        raise ValueError("order parameter coordinates must lie in [-1, 1]")
    if sizes is None:
        if isinstance(model, PSpinTilde):
            raise ValueError("tilde model density depends on N; pass sizes")
        n = 1
    else:
        n = int(np.sum(sizes))
    return float(model.energy(n, point * n)) / n


# ---------------------------------------------------------------- JSON files

def model_to_dict(model) -> dict:
    if isinstance(model, ScalarMeanField):
        return {"model": "scalar", "g": model.g.to_dict(), "K": model.bound}
    if isinstance(model, PSpinPlain):
        return {"model": "pspin", "p": model.p, "K": model.bound}
    if isinstance(model, PSpinTilde):
        return {"model": "pspin-tilde", "k": model.k, "K": model.bound}
    if isinstance(model, RandomFieldCW):
        return {"model": "rfcw", "h": list(model.h), "K": model.bound}
    if isinstance(model, Hopfield):
        return {"model": "hopfield", "patterns": [list(r) for r in model.patterns],
                "K": model.bound}
    raise TypeError(f"not a model: {model!r}")


def model_from_dict(d: dict):
    kind = d.get("model")
    if kind == "scalar":
        g = d["g"]
        if isinstance(g, str):
            g = {"kind": "builtin", "name": g}
        if d.get("K") is not None and g.get("K") is None:
            g = {**g, "K": d["K"]}
        model = ScalarMeanField(gfunction_from_dict(g))
    elif kind in ("pspin", "cw"):
        model = PSpinPlain(int(d.get("p", 2)))
    elif kind == "pspin-tilde":
        model = PSpinTilde(int(d["k"]))
    elif kind == "rfcw":
        model = RandomFieldCW(tuple(d["h"]))
    elif kind == "hopfield":
        model = Hopfield(tuple(tuple(r) for r in d["patterns"]))
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    K = d.get("K")
    if K is not None and model.bound > float(K) * (1 + 1e-12) + 1e-12:
        raise ValueError(f"declared K={K} is below the model bound {model.bound}")
    return model


def load_model(path) -> object:
    return model_from_dict(json.loads(Path(path).read_text()))


def save_model(model, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2))


def scalar(name_or_coeffs, bound=None) -> ScalarMeanField:
    """Shorthand: ``scalar("square")`` or ``scalar([0, 0, 1])``."""
    if isinstance(name_or_coeffs, str):
        return ScalarMeanField(Builtin(name_or_coeffs, bound))
    return ScalarMeanField(Polynomial(tuple(name_or_coeffs), bound))
