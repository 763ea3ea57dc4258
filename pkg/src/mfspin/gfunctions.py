"""Bounded functions g on [-1, 1].

Every mean-field Hamiltonian in this package has the form H_N = -N g(m).
The classes here hold g together with a verified bound K >= sup|g| and a
Lipschitz constant, which is what makes the sup-norm estimates rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P
from scipy.optimize import linprog

CHECK_POINTS = 10_001
SUP_POINTS = 100_001
_DOMAIN_TOL = 1e-12


def _poly_lipschitz(coeffs) -> float:
    """Rigorous bound on max |p'| over [-1, 1]: grid max of |p'| plus
    max|p''| * spacing / 2, with max|p''| bounded by sum k(k-1)|a_k|."""
    d1 = P.polyder(coeffs)
    if not np.any(d1):
        return 0.0
    x = np.linspace(-1.0, 1.0, CHECK_POINTS)
    curvature = sum(k * (k - 1) * abs(a) for k, a in enumerate(coeffs))
    return float(np.max(np.abs(P.polyval(x, d1)))) + curvature * (x[1] - x[0]) / 2


class DomainError(ValueError):
    """Raised when g is evaluated outside [-1, 1]."""


def _as_domain(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + _DOMAIN_TOL) or np.any(np.isnan(x)):
        raise DomainError("g is only defined on [-1, 1]")
    return np.clip(x, -1.0, 1.0)


class GFunction:
    """Base class. Subclasses implement ``_eval`` and ``lipschitz``."""

    bound: float | None

    def __call__(self, x):
        return self._eval(_as_domain(x))

    def _eval(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def lipschitz(self) -> float:
        raise NotImplementedError

    def as_polynomial(self) -> "Polynomial | None":
        return None

    def is_convex(self) -> bool:
        # second differences on the check grid; exact for the builtin and
        # polynomial cases up to roundoff
        x = np.linspace(-1.0, 1.0, CHECK_POINTS)
        y = self._eval(x)
        d2 = y[2:] - 2 * y[1:-1] + y[:-2]
        scale = max(1.0, float(np.max(np.abs(y))))
        return bool(np.all(d2 >= -1e-12 * scale))

    def grid_max(self) -> float:
        """Maximum of g (not |g|) on the check grid."""
        return float(np.max(self._eval(np.linspace(-1.0, 1.0, CHECK_POINTS))))

    def _settle_bound(self) -> None:
        x = np.linspace(-1.0, 1.0, CHECK_POINTS)
        observed = float(np.max(np.abs(self._eval(x))))
        if self.bound is None:
            slack = self.lipschitz() * (x[1] - x[0]) / 2
            object.__setattr__(self, "bound", observed + slack)
        elif observed > self.bound * (1 + 1e-12) + 1e-12:
            raise ValueError(
                f"declared bound K={self.bound} violated: |g| reaches {observed}"
            )

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Polynomial(GFunction):
    """g(x) = sum_k a_k x^k, coefficients in the monomial basis."""

    coefficients: tuple[float, ...]
    bound: float | None = None

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients) or (0.0,)
        object.__setattr__(self, "coefficients", coeffs)
        self._settle_bound()

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coefficients) if c != 0.0]
        return nz[-1] if nz else 0

    def _eval(self, x):
        return P.polyval(x, self.coefficients)

    def lipschitz(self) -> float:
        return _poly_lipschitz(self.coefficients)

    def as_polynomial(self):
        return self

    def to_dict(self):
        return {"kind": "polynomial", "coefficients": list(self.coefficients),
                "K": self.bound}


@dataclass(frozen=True)
class Tabulated(GFunction):
    """Piecewise-linear g through the points (x, y).

    ``lipschitz_constant`` is the declared modulus of continuity. It must
    dominate the slopes of the table, otherwise construction fails.
    """

    x: tuple[float, ...]
    y: tuple[float, ...]
    lipschitz_constant: float
    bound: float | None = None

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        ys = np.asarray(self.y, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or len(xs) < 2:
            raise ValueError("x and y must be 1-d arrays of equal length >= 2")
        if xs[0] != -1.0 or xs[-1] != 1.0 or np.any(np.diff(xs) <= 0):
            raise ValueError("x must be strictly increasing from -1 to 1")
        slopes = np.abs(np.diff(ys) / np.diff(xs))
        if np.max(slopes) > self.lipschitz_constant * (1 + 1e-12):
            raise ValueError(
                f"table slope {np.max(slopes)} exceeds declared Lipschitz "
                f"constant {self.lipschitz_constant}"
            )
        object.__setattr__(self, "x", tuple(xs.tolist()))
        object.__setattr__(self, "y", tuple(ys.tolist()))
        self._settle_bound()

    @classmethod
    def from_callable(cls, f: Callable, lipschitz_constant: float,
                      points: int = 2001, bound: float | None = None):
        xs = np.linspace(-1.0, 1.0, points)
        return cls(tuple(xs), tuple(np.asarray(f(xs), dtype=float)),
                   lipschitz_constant, bound)

    def _eval(self, x):
        return np.interp(x, self.x, self.y)

    def lipschitz(self) -> float:
        return float(self.lipschitz_constant)

    def to_dict(self):
        return {"kind": "tabulated", "x": list(self.x), "y": list(self.y),
                "lipschitz": self.lipschitz_constant, "K": self.bound}


# name -> (function, Lipschitz constant, sup |g|, monomial coefficients or None)
BUILTINS: dict[str, tuple[Callable, float, float, tuple | None]] = {
    "zero": (lambda x: np.zeros_like(x), 0.0, 0.0, (0.0,)),
    "linear": (lambda x: x, 1.0, 1.0, (0.0, 1.0)),
    "square": (lambda x: x**2, 2.0, 1.0, (0.0, 0.0, 1.0)),
    "cube": (lambda x: x**3, 3.0, 1.0, (0.0, 0.0, 0.0, 1.0)),
    "quartic": (lambda x: x**4, 4.0, 1.0, (0.0, 0.0, 0.0, 0.0, 1.0)),
    "square_minus_linear": (lambda x: x**2 - x, 3.0, 2.0, (0.0, -1.0, 1.0)),
    "neg_square": (lambda x: -(x**2), 2.0, 1.0, (0.0, 0.0, -1.0)),
    "abs": (np.abs, 1.0, 1.0, None),
}


@dataclass(frozen=True)
class Builtin(GFunction):
    name: str
    bound: float | None = None

    def __post_init__(self):
        if self.name not in BUILTINS:
            raise ValueError(f"unknown builtin g {self.name!r}; "
                             f"choose from {sorted(BUILTINS)}")
        if self.bound is None:
            object.__setattr__(self, "bound", BUILTINS[self.name][2])
        self._settle_bound()

    def _eval(self, x):
        return BUILTINS[self.name][0](x)

    def lipschitz(self) -> float:
        return BUILTINS[self.name][1]

    def as_polynomial(self):
        coeffs = BUILTINS[self.name][3]
        return None if coeffs is None else Polynomial(coeffs)

    def to_dict(self):
        return {"kind": "builtin", "name": self.name, "K": self.bound}


def gfunction_from_dict(d: dict) -> GFunction:
    kind = d.get("kind")
    K = d.get("K")
    if kind == "polynomial":
        return Polynomial(tuple(d["coefficients"]), K)
    if kind == "tabulated":
        return Tabulated(tuple(d["x"]), tuple(d["y"]), float(d["lipschitz"]), K)
    if kind == "builtin":
        return Builtin(d["name"], K)
    raise ValueError(f"unknown g kind {kind!r}")


def sup_norm_distance(g: GFunction, h: GFunction, points: int = SUP_POINTS) -> float:
    """Upper bound on sup_{[-1,1]} |g - h|.

    Dense-grid maximum plus a Lipschitz slack of L * spacing / 2, so the
    result is never below the true distance.
    """
    pg, ph = g.as_polynomial(), h.as_polynomial()
    x = np.linspace(-1.0, 1.0, points)
    if pg is not None and ph is not None:
        n = max(len(pg.coefficients), len(ph.coefficients))
        a = np.zeros(n)
        a[: len(pg.coefficients)] += pg.coefficients
        a[: len(ph.coefficients)] -= ph.coefficients
        if not np.any(a[1:]):
            return float(abs(a[0]))
        diff = np.abs(P.polyval(x, a))
        lip = _poly_lipschitz(a)
    else:
        diff = np.abs(g(x) - h(x))
        lip = g.lipschitz() + h.lipschitz()
    return float(np.max(diff)) + lip * (x[1] - x[0]) / 2


@dataclass(frozen=True)
class Approximation:
    polynomial: Polynomial
    sup_norm: float
    grid_error: float


def chebyshev_approximate(g: GFunction, degree: int,
                          grid_points: int = 4001) -> Approximation:
    """Discrete minimax polynomial of the given degree.

    Solves the equioscillation problem on a uniform grid as a linear
    program in the Chebyshev basis, then converts to monomial coefficients.
    Nested polynomial spaces make ``grid_error`` nonincreasing in degree.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    own = g.as_polynomial()
    if own is not None and own.degree <= degree:
        return Approximation(own, 0.0, 0.0)

    x = np.linspace(-1.0, 1.0, grid_points)
    y = g(x)
    V = C.chebvander(x, degree)
    # variables (c_0..c_n, E): minimize E with |y - V c| <= E
    ones = np.ones((len(x), 1))
    A = np.vstack([np.hstack([V, -ones]), np.hstack([-V, -ones])])
    b = np.concatenate([y, -y])
    cost = np.zeros(degree + 2)
    cost[-1] = 1.0
    bounds = [(None, None)] * (degree + 1) + [(0, None)]
    res = linprog(cost, A_ub=A, b_ub=b, bounds=bounds, method="highs",
                  options={"primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    if not res.success:
        raise RuntimeError(f"minimax LP failed: {res.message}")
    cheb = res.x[:-1]
    poly = Polynomial(tuple(C.cheb2poly(cheb)))
    grid_error = float(np.max(np.abs(y - poly(x))))
    return Approximation(poly, sup_norm_distance(g, poly), grid_error)
