import math

import numpy as np
import pytest

from mfspin import PSpinPlain, SplitSpec, scalar
from mfspin.disorder import pointwise_subadditivity, quenched_average, sample_disorder
from mfspin.sectors import alpha_value


def test_sampling_is_deterministic():
    a = sample_disorder(11, "patterns", 30, 3, index=4)
    b = sample_disorder(11, "patterns", 30, 3, index=4)
    np.testing.assert_array_equal(a.values, b.values)
    c = sample_disorder(11, "patterns", 30, 3, index=5)
    assert not np.array_equal(a.values, c.values)


def test_sample_values_and_concentration():
    s = sample_disorder(0, "patterns", 10, 2)
    assert s.values.shape == (2, 10) and set(np.unique(s.values)) <= {-1, 1}
    h = sample_disorder(123, "random-field", 10_000).values
    assert abs(h.mean()) <= 0.05
    for M, N in ((1, 500), (3, 2000)):
        v = sample_disorder(9, "patterns", N, M).values
        assert abs(v.mean()) <= 5 / math.sqrt(N * M)


def test_unknown_kind():
    with pytest.raises(ValueError):
        sample_disorder(0, "gaussian", 5)


@pytest.mark.parametrize("kind", ["random-field", "patterns"])
def test_pointwise_subadditivity_fifty_seeds(kind):
    for i in range(50):
        m = sample_disorder(2024, kind, 12, 2, index=i).model()
        assert pointwise_subadditivity(m, SplitSpec(6, 6), 1.0).ok


def test_pointwise_subadditivity_beta_zero_equality():
    m = sample_disorder(5, "random-field", 12).model()
    r = pointwise_subadditivity(m, SplitSpec(6, 6), 0.0)
    assert abs(r.slack) <= 1e-12


def test_split_must_match_sites():
    m = sample_disorder(5, "random-field", 12).model()
    with pytest.raises(ValueError):
        pointwise_subadditivity(m, SplitSpec(6, 7), 1.0)


def test_quenched_beta_zero():
    est = quenched_average("random-field", 10, 0.0, 8, base_seed=3)
    assert est.mean_alpha == pytest.approx(math.log(2), abs=1e-14)
    assert est.std_error <= 1e-13


def test_quenched_uniform_field_reduces_to_scalar():
    est = quenched_average("uniform-field", 14, 1.2, 3, base_seed=0)
    assert est.mean_alpha == pytest.approx(
        alpha_value(scalar("square_minus_linear"), 14, 1.2), abs=1e-14)


def test_hopfield_single_pattern_gauge_invariance():
    ref = alpha_value(PSpinPlain(2), 16, 1.3)
    vals = [alpha_value(sample_disorder(77, "patterns", 16, 1, index=i).model(), None, 1.3)
            for i in range(20)]
    assert max(abs(v - ref) for v in vals) <= 1e-12


def test_rfcw_quenched_mean_nonincreasing_on_doubling_ladder():
    ests = [quenched_average("random-field", N, 1.0, 200, base_seed=99) for N in (8, 16, 32)]
    for a, b in zip(ests, ests[1:]):
        assert b.mean_alpha <= a.mean_alpha + 2 * max(a.std_error, b.std_error)
        assert a.per_sample_subadditivity_failures == 0


def test_worker_count_does_not_change_result():
    one = quenched_average("patterns", 12, 1.0, 12, base_seed=5, M=2, workers=1)
    two = quenched_average("patterns", 12, 1.0, 12, base_seed=5, M=2, workers=2)
    assert one.to_dict() == two.to_dict()
    assert one.mean_alpha.hex() == two.mean_alpha.hex()
