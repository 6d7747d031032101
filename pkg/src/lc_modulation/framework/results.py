from dataclasses import dataclass, field
from enum import Enum
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np


class NumpyEncoder(json.JSONEncoder):
    """numpy scalars and arrays; complex values as {"real", "imag"}; enums by value."""

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            if np.iscomplexobj(obj):
                return {"real": self.default(obj.real), "imag": self.default(obj.imag)}
            if obj.dtype.kind == "f" and not np.all(np.isfinite(obj)):
                bad = int(np.count_nonzero(~np.isfinite(obj)))
                raise ValueError(f"array of shape {obj.shape} holds {bad} non-finite value(s)")
            return obj.tolist()
        elif isinstance(obj, (complex, np.complexfloating)):
            return {"real": float(obj.real), "imag": float(obj.imag)}
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, Enum):
            return obj.value
        elif isinstance(obj, Path):
            return str(obj)
        elif hasattr(obj, "to_dict"):
            return obj.to_dict()
        return super().default(obj)


def finite_or_none(value: float) -> Optional[float]:
    # JSON has no inf/nan
    return None if value is None or not math.isfinite(value) else float(value)


def write_json(data: Dict[str, Any], filepath: str) -> None:
    with open(filepath, 'w') as f:
        json.dump(data, f, indent=2, sort_keys=True, cls=NumpyEncoder, allow_nan=False)
        f.write("\n")


def write_csv(filepath: str, columns: Dict[str, Sequence[float]]) -> None:
    """Columns of equal length, floats with 17 significant digits."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[name], dtype=np.float64) for name in names])
    np.savetxt(filepath, data, fmt="%.17g", delimiter=",", header=",".join(names), comments="")


@dataclass
class FitReport:
    mse: float
    sigma2: float
    edf: float
    aic: float
    sigma2_0: float
    n_obs: int
    n_coefficients: int
    config: Dict[str, Any] = field(default_factory=dict)
    files: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mse": finite_or_none(self.mse),
            "sigma2": finite_or_none(self.sigma2),
            "edf": finite_or_none(self.edf),
            "aic": finite_or_none(self.aic),
            "sigma2_0": finite_or_none(self.sigma2_0),
            "n_obs": self.n_obs,
            "n_coefficients": self.n_coefficients,
            "config": self.config,
            "files": self.files,
        }
