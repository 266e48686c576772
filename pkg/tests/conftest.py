import numpy as np
import pytest

from aesworkbench.config import CONFIG_ENV
from aesworkbench.oracle import fock_state
from aesworkbench.zoo import Truncation


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def truncation():
    return Truncation(dim=64)


@pytest.fixture
def vacuum():
    return fock_state(0, 32)


@pytest.fixture(autouse=True)
def no_config_file(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)


def disk_points(rng, count, radius=1.0):
    r = radius * np.sqrt(rng.uniform(size=count))
    return r * np.exp(2j * np.pi * rng.uniform(size=count))
