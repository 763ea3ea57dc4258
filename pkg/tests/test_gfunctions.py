import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfspin.gfunctions import (Builtin, DomainError, Polynomial, Tabulated,
                               chebyshev_approximate, gfunction_from_dict,
                               sup_norm_distance)

coeffs = st.lists(st.floats(-2, 2, allow_nan=False), min_size=1, max_size=7)


def test_evaluation_outside_domain_is_an_error():
    g = Builtin("square")
    with pytest.raises(DomainError):
        g(1.5)
    with pytest.raises(DomainError):
        Polynomial((0, 1))(np.array([0.0, -1.01]))


def test_declared_bound_checked_at_construction():
    Polynomial((0, 0, 1), bound=1.0)
    with pytest.raises(ValueError, match="declared bound"):
        Polynomial((0, 0, 1), bound=0.5)
    with pytest.raises(ValueError):
        Builtin("square_minus_linear", bound=1.5)


def test_tabulated_rejects_understated_lipschitz():
    with pytest.raises(ValueError, match="Lipschitz"):
        Tabulated.from_callable(lambda x: 3 * x, 2.0)


@given(coeffs)
def test_derived_bound_dominates_values(c):
    g = Polynomial(tuple(c))
    x = np.linspace(-1, 1, 50_001)
    assert np.max(np.abs(g(x))) <= g.bound + 1e-12


def test_sup_norm_trivial_cases():
    x2 = Polynomial((0, 0, 1))
    assert sup_norm_distance(x2, x2) == 0.0
    assert sup_norm_distance(x2, Polynomial((0.1, 0, 1))) == pytest.approx(0.1, abs=1e-15)


def test_sup_norm_cubic_vs_best_line():
    # x^3 - 3x/4 = T_3(x)/4 equioscillates with amplitude 1/4
    d = sup_norm_distance(Polynomial((0, 0, 0, 1)), Polynomial((0, 0.75)))
    assert 0.25 <= d <= 0.25 + 5e-5


@given(coeffs, coeffs)
def test_sup_norm_is_an_upper_bound(a, b):
    g, h = Polynomial(tuple(a)), Polynomial(tuple(b))
    x = np.linspace(-1, 1, 300_007)  # grid not nested in the internal one
    assert np.max(np.abs(g(x) - h(x))) <= sup_norm_distance(g, h) + 1e-12


def test_sup_norm_mixed_kinds_is_upper_bound():
    g = Builtin("abs")
    h = Polynomial((0.1, 0, 0.8))
    x = np.linspace(-1, 1, 300_007)
    assert np.max(np.abs(g(x) - h(x))) <= sup_norm_distance(g, h)


def test_best_constant_for_abs():
    g = Tabulated.from_callable(np.abs, 1.0)
    a = chebyshev_approximate(g, 0)
    assert a.polynomial.coefficients[0] == pytest.approx(0.5, abs=1e-9)
    assert a.sup_norm == pytest.approx(0.5, abs=1e-4)


def test_classic_degree_two_error_for_abs():
    # best quadratic for |x| is x^2 + 1/8, error 1/8
    a = chebyshev_approximate(Tabulated.from_callable(np.abs, 1.0), 2)
    assert a.grid_error == pytest.approx(0.125, abs=1e-9)
    np.testing.assert_allclose(a.polynomial.coefficients, [0.125, 0, 1], atol=1e-8)


def test_polynomial_is_a_fixed_point():
    p = Polynomial((0.2, -0.3, 0.0, 0.5))
    a = chebyshev_approximate(p, 3)
    assert a.sup_norm <= 1e-12
    assert a.polynomial == p
    assert chebyshev_approximate(Builtin("quartic"), 6).sup_norm <= 1e-12


def test_abs_degree_eight_near_bernstein_constant():
    # Bernstein: E_{2n}(|x|) ~ 0.2802/(2n); minimax must also beat
    # plain Chebyshev interpolation (computed independently by numpy)
    g = Tabulated.from_callable(np.abs, 1.0)
    a = chebyshev_approximate(g, 8)
    interp = np.polynomial.Chebyshev.interpolate(np.abs, 8)
    x = np.linspace(-1, 1, 200_001)
    assert a.sup_norm < np.max(np.abs(np.abs(x) - interp(x)))
    assert a.grid_error == pytest.approx(0.0346897, abs=1e-6)
    assert abs(a.grid_error - 0.2802 / 8) < 2e-3


def test_approximation_error_nonincreasing_in_degree():
    corpus = [Tabulated.from_callable(np.abs, 1.0),
              Tabulated.from_callable(lambda x: np.sqrt(np.abs(x) + 0.01), 5.0),
              Tabulated.from_callable(lambda x: np.maximum(x, 0.3), 1.0)]
    for g in corpus:
        errs = [chebyshev_approximate(g, n).grid_error for n in range(9)]
        assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:])), errs


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        chebyshev_approximate(Builtin("abs"), -1)


def test_convexity_detection():
    assert Builtin("square").is_convex()
    assert Builtin("quartic").is_convex()
    assert Builtin("square_minus_linear").is_convex()
    assert not Builtin("neg_square").is_convex()
    assert not Builtin("cube").is_convex()


@pytest.mark.parametrize("g", [Polynomial((0.1, 0.2, -0.3)), Builtin("abs"),
                               Tabulated.from_callable(np.cos, 1.0, points=11)])
def test_dict_round_trip(g):
    assert gfunction_from_dict(g.to_dict()) == g
