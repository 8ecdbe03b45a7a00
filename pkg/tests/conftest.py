import pytest

from core.config import FuzzConfig
from core.generators import example_instance
from core.hermitian import Signature


@pytest.fixture
def small_config():
    """A corpus small enough for the default test run"""
    return FuzzConfig.create_custom_config(
        seed=7, max_dim=5, max_degree=2, trials=10,
        sign_trials=60, pair_trials=60, plane_trials=4,
    )


@pytest.fixture
def example_map():
    """[z1^2, z2^2, z1 z2, z2^2, z2^2] : P^{1,1} -> P^{2,2,1}"""
    return example_instance()


@pytest.fixture
def sig11():
    return Signature(1, 1, 0)
