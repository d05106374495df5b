import os

import numpy as np
import pytest


def _seed() -> int:
    return int(os.environ.get("MEMLENS_SEED", "20260816"))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(_seed())
