import os

import pytest
from hypothesis import HealthCheck, settings

from rbwb.hopf import builtin_h4
from rbwb.scalars import GF, QQ

settings.register_profile(
    "ci", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


@pytest.fixture(params=FIELDS, ids=lambda c: c.name)
def field(request):
    return request.param


@pytest.fixture(scope="session")
def h4q():
    return builtin_h4(QQ)
