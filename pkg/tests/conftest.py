from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from dihedral_doubles import get_context

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def ctx12():
    return get_context(12)


@pytest.fixture(scope="session")
def ctx16():
    return get_context(16)
