import pathlib

import numpy as np
import pytest

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def fixture_dir() -> pathlib.Path:
    return FIXTURE_DIR


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
