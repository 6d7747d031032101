import json
import math
from pathlib import Path

import numpy as np
import pytest

from lc_modulation.constants import Normalization
from lc_modulation.framework.results import FitReport, NumpyEncoder, finite_or_none, write_json


def _encode(value):
    return json.loads(json.dumps(value, cls=NumpyEncoder, allow_nan=False))


def test_numpy_scalars_and_arrays():
    assert _encode({"n": np.int64(3), "x": np.float32(0.5), "ok": np.bool_(True)}) == {
        "n": 3, "x": 0.5, "ok": True}
    assert _encode(np.arange(4).reshape(2, 2)) == [[0, 1], [2, 3]]


def test_complex_values_split_into_parts():
    assert _encode(np.array([1 + 2j, -0.5j])) == {"real": [1.0, 0.0], "imag": [2.0, -0.5]}
    assert _encode(np.complex128(3 - 4j)) == {"real": 3.0, "imag": -4.0}
    assert _encode(1j) == {"real": 0.0, "imag": 1.0}


def test_non_finite_array_is_rejected():
    with pytest.raises(ValueError, match="1 non-finite"):
        _encode(np.array([1.0, np.inf, 2.0]))
    with pytest.raises(ValueError, match="non-finite"):
        _encode(np.array([np.nan + 1j]))


def test_enums_paths_and_reports():
    assert _encode(Normalization.COUNT) == "count"
    assert _encode(Path("results") / "fit.csv") == str(Path("results") / "fit.csv")
    report = FitReport(mse=0.1, sigma2=0.11, edf=4.0, aic=math.inf, sigma2_0=0.1, n_obs=50, n_coefficients=9)
    assert _encode(report)["aic"] is None


def test_finite_or_none():
    assert finite_or_none(1.5) == 1.5
    assert finite_or_none(None) is None
    assert finite_or_none(float("nan")) is None
    assert finite_or_none(-math.inf) is None


def test_write_json_refuses_nan(tmp_path):
    with pytest.raises(ValueError):
        write_json({"psd": np.array([0.1, np.nan])}, str(tmp_path / "out.json"))
