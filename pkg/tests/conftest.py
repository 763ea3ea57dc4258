import numpy as np
import pytest
from hypothesis import settings

from mfspin import Hopfield, PSpinPlain, PSpinTilde, RandomFieldCW, scalar
from mfspin.disorder import sample_disorder

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

BETAS = (0.0, 0.5, 1.0, 2.0, 5.0)

# fixed polynomials up to degree 6 (drawn once from a seeded rng, then frozen)
POLYS = {
    1: (0.3, -0.7),
    2: (-0.2, 0.4, 0.9),
    3: (0.1, -0.5, 0.25, 0.8),
    4: (0.0, 0.3, -1.1, 0.2, 0.6),
    5: (0.5, 0.2, 0.1, -0.4, 0.3, -0.6),
    6: (-0.1, 0.0, 0.7, 0.3, -0.9, 0.1, 0.5),
}


def scalar_families():
    fams = [(f"poly{d}", scalar(c), 1) for d, c in POLYS.items()]
    fams += [(f"pspin{p}", PSpinPlain(p), p + 1) for p in (2, 3, 4)]
    fams += [(f"tilde{k}", PSpinTilde(k), k + 1) for k in (2, 3, 4)]
    return fams


def disordered(kind, N, seed, M=2):
    return sample_disorder(seed, kind, N, M).model()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def hopfield8():
    return disordered("patterns", 8, 3)


@pytest.fixture
def rfcw10():
    return RandomFieldCW((1, -1, 1, 1, -1, -1, 1, 1, 1, -1))


