"""
Configuración común de pytest: agrega `src/` al path igual que main.py.
"""
import os
import sys

import numpy as np
import pytest

SRC_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")
if SRC_DIR not in sys.path:
    sys.path.insert(0, SRC_DIR)

CONFIGS_DIR = os.path.join(os.path.dirname(SRC_DIR), "configs")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def tiny_config_path():
    return os.path.join(CONFIGS_DIR, "blobs_tiny.env")
