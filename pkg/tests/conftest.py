import numpy as np
import pytest

from lc_modulation.config import reset_config


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    for key in ("LCMOD_OUTPUT_DIR", "LCMOD_THREADS", "LCMOD_LOG_LEVEL", "LCMOD_GRID_TOL_FACTOR",
                "LCMOD_DECONV_FLOOR", "LCMOD_IMAG_TOL", "LCMOD_FLAT_RATIO", "LCMOD_JITTER"):
        monkeypatch.delenv(key, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
