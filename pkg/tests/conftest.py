import os
import sys
from datetime import timedelta

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import AppConfig  # noqa: E402
from core.controller import Controller  # noqa: E402

settings.register_profile(
    "default",
    max_examples=60,
    deadline=timedelta(seconds=10),
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None, derandomize=True)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical checks")


@pytest.fixture
def app_config(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith(("QSM_", "MULTI_", "MZV_", "OUTPUT_", "REPRO_")):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("LOG_DIR", "")
    return AppConfig.from_env()


@pytest.fixture
def controller(app_config):
    return Controller(app_config)
