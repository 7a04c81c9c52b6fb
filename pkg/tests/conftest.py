import os
import pathlib

# Reuse the Clifford enumeration tables across test processes.
os.environ.setdefault(
    "SHADOWOPT_CACHE_DIR", str(pathlib.Path(__file__).resolve().parent.parent / ".cache")
)

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
