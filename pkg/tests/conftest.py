import pytest
from hypothesis import HealthCheck, settings

from exacthall.quiver import ar_quiver

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def a2():
    return ar_quiver("a2")


@pytest.fixture(scope="session")
def a3():
    return ar_quiver("a3")


@pytest.fixture(scope="session")
def disjoint():
    return ar_quiver("disjoint-a2")
