import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tulczyjew import bundle as B

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALL_SCENARIOS = sorted(B.SCENARIOS)


@pytest.fixture(params=ALL_SCENARIOS)
def scenario(request):
    return B.get_scenario(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
