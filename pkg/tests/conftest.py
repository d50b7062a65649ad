import os

import pytest
from hypothesis import HealthCheck, settings

import linklab.invariants as invariants

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def verify_simplification(monkeypatch):
    monkeypatch.setattr(invariants, "VERIFY_SIMPLIFY", True)
