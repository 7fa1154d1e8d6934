"""Shared fixtures."""

import numpy as np
import pytest

from bcframes import fixtures
from bcframes.config import get_default_config
from bcframes.frames.analysis import FrameFamily, embedded_onb


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def config() -> dict:
    return get_default_config()


@pytest.fixture
def onb3() -> FrameFamily:
    return embedded_onb(3)


@pytest.fixture
def random_frame(rng) -> FrameFamily:
    """A redundant random family in C^4 (a bc-frame with probability one)."""
    return fixtures.random_family(rng, 4, 9)


@pytest.fixture(autouse=True)
def _isolate_env(monkeypatch):
    monkeypatch.delenv("BCFRAMES_SEED", raising=False)
    monkeypatch.delenv("BCFRAMES_CONFIG", raising=False)
