from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact", derandomize=True, deadline=None, print_blob=False,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES
