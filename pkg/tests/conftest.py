import numpy as np
import pytest

from jordan.models import direct_sum, spin_algebra, sym_algebra, vector_algebra

CATALOGUE = [
    vector_algebra(3),
    vector_algebra(5),
    sym_algebra(2),
    sym_algebra(3),
    sym_algebra(5),
    spin_algebra(2),
    spin_algebra(4),
    direct_sum(sym_algebra(2), sym_algebra(2)),
    direct_sum(sym_algebra(3), sym_algebra(3)),
    direct_sum(vector_algebra(2), spin_algebra(3)),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=CATALOGUE, ids=str)
def algebra(request):
    return request.param
