import math

import numpy as np
import pytest
from conftest import disordered
from hypothesis import given
from hypothesis import strategies as st

from mfspin import (Hopfield, PSpinPlain, RandomFieldCW, alpha, build_class_table,
                    build_scalar_table, build_two_block_table, gibbs_expect, model_table,
                    scalar)
from mfspin import brute
from mfspin.sectors import (SectorBudgetError, achievable_gmax, alpha_value, logsumexp,
                            sector_energies)


def test_scalar_table_n1():
    t = build_scalar_table(1)
    np.testing.assert_array_equal(t.order_point()[:, 0], [-1.0, 1.0])
    np.testing.assert_allclose(np.exp(t.log_multiplicity), [1, 1])


def test_scalar_table_n4_middle_sector():
    t = build_scalar_table(4)
    assert t.counts[2, 0] == 2
    assert math.exp(t.log_multiplicity[2]) == pytest.approx(6.0, rel=1e-14)
    assert t.order_point()[2, 0] == 0.0


def test_scalar_table_total_multiplicity_n100():
    t = build_scalar_table(100)
    assert t.total_log_multiplicity() == pytest.approx(100 * math.log(2), rel=1e-10)


@given(st.integers(1, 30))
def test_exact_total_multiplicity(N):
    assert build_scalar_table(N).exact_total_multiplicity() == 2**N


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_class_table_shape_and_total(sizes):
    sigs = np.eye(len(sizes))
    t = build_class_table(sizes, sigs)
    assert t.n_sectors == math.prod(n + 1 for n in sizes)
    assert t.exact_total_multiplicity() == 2 ** sum(sizes)
    assert t.total_log_multiplicity() == pytest.approx(sum(sizes) * math.log(2), rel=1e-10)


def test_two_block_tables():
    t = build_two_block_table(1, 1)
    assert t.n_sectors == 4
    np.testing.assert_allclose(np.exp(t.log_multiplicity), 1.0)
    t = build_two_block_table(2, 2)
    i = int(np.flatnonzero((t.counts == [1, 1]).all(axis=1))[0])
    assert math.exp(t.log_multiplicity[i]) == pytest.approx(4.0)
    assert t.order_point(0)[i, 0] == 0.0 and t.order_point(1)[i, 0] == 0.0
    assert t.order_point()[i, 0] == 0.0


@given(st.integers(1, 12), st.integers(1, 12))
def test_two_block_convex_combination(N1, N2):
    t = build_two_block_table(N1, N2)
    N = N1 + N2
    combo = N1 / N * t.order_point(0) + N2 / N * t.order_point(1)
    np.testing.assert_allclose(t.order_point(), combo, atol=1e-15)


@given(st.integers(1, 15), st.integers(1, 15))
def test_marginal_is_vandermonde(N1, N2):
    t = build_two_block_table(N1, N2)
    # summing C(N1,k1) C(N2,k2) over k2 gives C(N1,k1) 2^N2
    for keep, n, other in ((0, N1, N2), (1, N2, N1)):
        marg = t.marginal_log_multiplicity(keep)
        scalar_t = build_scalar_table(n)
        np.testing.assert_allclose(marg, scalar_t.log_multiplicity + other * math.log(2),
                                   rtol=1e-13, atol=1e-13)


def test_zero_sized_inputs_rejected():
    with pytest.raises(ValueError):
        build_scalar_table(0)
    with pytest.raises(ValueError):
        build_two_block_table(3, 0)
    with pytest.raises(ValueError):
        build_class_table([2, 2], [[1.0]])


def test_sector_budget_guard():
    with pytest.raises(SectorBudgetError):
        build_class_table([9] * 10, np.eye(10), budget=10**8)


def test_degenerate_rfcw_is_scalar_square_minus_linear():
    N = 11
    m = RandomFieldCW((1,) * N)
    t = model_table(m)
    assert t.n_sectors == N + 1
    np.testing.assert_array_equal(t.log_multiplicity, build_scalar_table(N).log_multiplicity)
    for beta in (0.3, 1.0, 2.5):
        assert alpha(m, t, beta).alpha == pytest.approx(
            alpha_value(scalar("square_minus_linear"), N, beta), abs=1e-14)


@pytest.mark.parametrize("seed", range(5))
def test_hopfield_single_pattern_equals_curie_weiss(seed):
    m = disordered("patterns", 13, seed, M=1)
    for beta in (0.4, 1.0, 3.0):
        assert alpha_value(m, None, beta) == pytest.approx(
            alpha_value(PSpinPlain(2), 13, beta), abs=1e-13)


def test_hopfield_m2_matches_brute(hopfield8):
    assert alpha_value(hopfield8, None, 1.0) == pytest.approx(
        brute.oracle_alpha(hopfield8, 8, 1.0), abs=1e-12)


@pytest.mark.parametrize("model", [scalar("square"), PSpinPlain(3), scalar([0.2, -1, 0.5])])
def test_beta_zero_gives_log2(model):
    for N in (1, 7, 40):
        assert alpha_value(model, N, 0.0) == pytest.approx(math.log(2), abs=1e-13)


def test_cw_n2_hand_enumeration():
    # configurations: ++, -- with H=-2 and +-, -+ with H=0
    expected = 0.5 * math.log(2 * math.e**2 + 2)
    assert alpha_value(PSpinPlain(2), 2, 1.0) == pytest.approx(expected, abs=1e-15)


@given(st.integers(1, 200))
def test_alpha_above_beta_times_achievable_max(N):
    beta = 1.0
    assert alpha_value(PSpinPlain(2), N, beta) >= beta * achievable_gmax(PSpinPlain(2), N)


def test_gibbs_probabilities_normalized():
    for beta in np.linspace(0, 10, 11):
        for model, N in ((scalar("square"), 50), (scalar([0, 1, -2, 0, 1]), 33)):
            s = alpha(model, model_table(model, N), beta)
            assert abs(math.fsum(s.probabilities.tolist()) - 1) <= 1e-12


def test_gibbs_expect_constant_and_variance():
    m, N = PSpinPlain(2), 9
    t = model_table(m, N)
    assert gibbs_expect(m, t, 1.3, 2.5) == pytest.approx(2.5, abs=1e-14)
    m2 = gibbs_expect(m, t, 0.0, lambda tab: tab.order_point()[:, 0] ** 2)
    assert m2 == pytest.approx(1 / N, abs=1e-14)


def test_gibbs_expect_energy_matches_brute():
    m, N, beta = PSpinPlain(2), 12, 1.5
    t = model_table(m, N)
    ours = gibbs_expect(m, t, beta, sector_energies(m, t))
    ref = brute.oracle_expect(m, N, beta, lambda s: brute.raw_hamiltonian(m, s))
    assert abs(ours - ref) <= 1e-11


def test_gibbs_expect_rejects_undefined_observable():
    m = PSpinPlain(2)
    t = model_table(m, 4)
    with pytest.raises(ValueError):
        gibbs_expect(m, t, 1.0, np.array([1.0, np.nan, 0, 0, 0]))


def test_incompatible_table_rejected():
    with pytest.raises(ValueError):
        alpha(Hopfield(((1, -1), (1, 1))), build_scalar_table(2), 1.0)


@given(st.integers(2, 60), st.floats(0, 3), st.floats(0, 3))
def test_alpha_nondecreasing_in_beta_for_nonnegative_g(N, b1, b2):
    lo, hi = sorted((b1, b2))
    m = scalar("square")
    assert alpha_value(m, N, lo) <= alpha_value(m, N, hi) + 1e-14


def test_logsumexp_is_order_independent():
    rng = np.random.default_rng(1)
    v = rng.normal(size=10_000) * 50
    assert logsumexp(v) == logsumexp(v[::-1]) == logsumexp(rng.permutation(v))
    assert logsumexp(np.array([-np.inf, -np.inf])) == -np.inf


def test_table_csv_dump(tmp_path):
    t = build_two_block_table(2, 3)
    path = tmp_path / "t.csv"
    t.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "k0,k1,log_multiplicity,m0"
    assert len(lines) == 1 + 12
