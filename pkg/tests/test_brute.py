import itertools
import math

import numpy as np
import pytest

from mfspin import PSpinPlain, RandomFieldCW, scalar
from mfspin.brute import (MAX_N, oracle_alpha, oracle_expect, raw_hamiltonian,
                          spin_configurations)


def test_enumeration_is_lexicographic_and_complete():
    s = spin_configurations(3)
    assert s.shape == (8, 3)
    assert [tuple(r) for r in s] == list(itertools.product((-1, 1), repeat=3))
    assert len({tuple(r) for r in spin_configurations(10)}) == 1024


def test_cap():
    with pytest.raises(ValueError):
        oracle_alpha(PSpinPlain(2), MAX_N + 1, 1.0)


def test_beta_zero_and_hand_case():
    assert oracle_alpha(PSpinPlain(2), 7, 0.0) == pytest.approx(math.log(2), abs=1e-15)
    assert oracle_alpha(PSpinPlain(2), 2, 1.0) == pytest.approx(
        0.5 * math.log(2 * math.e**2 + 2), abs=1e-15)


def test_expectations_trivial():
    m = PSpinPlain(2)
    assert oracle_expect(m, 6, 1.0, lambda s: np.ones(len(s))) == pytest.approx(1.0)
    assert oracle_expect(m, 6, 0.0, lambda s: s[:, 0] * s[:, 1]) == pytest.approx(0, abs=1e-16)


def test_permutation_invariance_of_pair_correlations():
    m, N = PSpinPlain(2), 10
    vals = [oracle_expect(m, N, 1.0, lambda s, i=i, j=j: s[:, i] * s[:, j])
            for i, j in itertools.combinations(range(N), 2)]
    assert max(vals) - min(vals) <= 1e-14


def test_spin_flip_symmetry():
    for g in ("square", "quartic", "abs"):
        m = scalar(g)
        for i in range(5):
            assert abs(oracle_expect(m, 9, 1.5, lambda s, i=i: s[:, i])) <= 1e-14


def test_rfcw_raw_formula_site_by_site():
    h = (1, -1, -1, 1, 1)
    m = RandomFieldCW(h)
    s = spin_configurations(5)
    ref = np.array([-sum(a * b for a in r for b in r) / 5 + sum(hi * r_i for hi, r_i in zip(h, r))
                    for r in s.tolist()])
    np.testing.assert_allclose(raw_hamiltonian(m, s), ref, atol=1e-13)
