"""
Pytest configuration and fixtures for permoments tests.
"""
import os
from pathlib import Path

import numpy as np
import pytest

# Settings come from the environment; fix them BEFORE importing the package
os.environ['PERMOMENTS_LOG_LEVEL'] = 'WARNING'
os.environ['PERMOMENTS_JSON_LOGS'] = 'false'
os.environ['PERMOMENTS_THREADS'] = '1'

# Clear any cached settings
from permoments.config import config

config._settings = None

from permoments.config import Settings, get_settings
from permoments.schemas.trace import GridSpec

FIXTURES = Path(__file__).parent / "fixtures"
RUN_SLOW = os.environ.get('PERMOMENTS_RUN_SLOW') == '1'


def pytest_collection_modifyitems(config, items):
    if RUN_SLOW:
        return
    skip_slow = pytest.mark.skip(reason="set PERMOMENTS_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def settings() -> Settings:
    """Default settings from the test environment."""
    return get_settings()


@pytest.fixture
def forced_settings(settings: Settings) -> Settings:
    """Settings with resource budgets lifted."""
    return settings.model_copy(update={"FORCED": True})


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for reproducible sampling tests."""
    return np.random.default_rng(20240611)


@pytest.fixture
def grid_3x3() -> GridSpec:
    return GridSpec(k=3, t=3)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
