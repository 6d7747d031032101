from dataclasses import dataclass
import logging
import math
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import ndtri

from ..basis.design import DesignMatrix
from ..constants import ComponentKind
from ..exceptions import OutOfRange, TooFewReplicates, UnknownComponent
from .fit import FitResult, PenalizedSystem


logger = logging.getLogger("lc_modulation.intervals")

Which = Union[str, ComponentKind, Tuple[Union[str, ComponentKind, int], int]]


@dataclass
class Band:
    times: np.ndarray
    center: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    level: float

    @property
    def half_width(self) -> np.ndarray:
        return (self.upper - self.lower) / 2.0

    def contains(self, values: Sequence[float]) -> np.ndarray:
        values = np.asarray(values, dtype=np.float64)
        return (self.lower <= values) & (values <= self.upper)

    def coverage(self, values: Sequence[float]) -> float:
        return float(np.mean(self.contains(values)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "times": self.times,
            "center": self.center,
            "lower": self.lower,
            "upper": self.upper,
        }


def normal_quantile(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise OutOfRange(f"quantile probability must lie in (0, 1), got {p}")
    return float(ndtri(p))


def _check_level(level: float) -> None:
    if not 0.0 < level < 1.0:
        raise OutOfRange(f"coverage level must lie in (0, 1), got {level}")


def theta_covariance(design: DesignMatrix, P: np.ndarray, sigma2: float) -> np.ndarray:
    """sigma2 * A^-1 B'B A^-1 with A = B'B + P."""
    if sigma2 < 0:
        raise OutOfRange(f"error variance must be non-negative, got {sigma2}")
    system = PenalizedSystem(design, P)
    inv = system.inverse()
    V = sigma2 * (inv @ system.gram @ inv)
    return (V + V.T) / 2.0


def _pointwise_sd(rows: np.ndarray, V: np.ndarray) -> np.ndarray:
    variance = np.einsum("ij,jk,ik->i", rows, V, rows)
    return np.sqrt(np.clip(variance, 0.0, None))


def prediction_band(fit: FitResult, design: DesignMatrix, P: np.ndarray,
                    level: float = 0.95, sigma2: Optional[float] = None) -> Band:
    """Pointwise band for mu-hat at the design times.

    Only the estimator variance enters; future-observation noise is not added.
    """
    _check_level(level)
    sigma2 = fit.sigma2 if sigma2 is None else sigma2
    V = theta_covariance(design, P, sigma2)
    half = normal_quantile(1.0 - (1.0 - level) / 2.0) * _pointwise_sd(design.matrix, V)
    center = np.asarray(fit.fitted)
    return Band(times=np.asarray(design.basis.times), center=center,
                lower=center - half, upper=center + half, level=level)


def _resolve_component(which: Which, n_harmonics: int) -> Tuple[ComponentKind, int]:
    try:
        if isinstance(which, (str, ComponentKind)):
            kind, k = ComponentKind(which), 0
        else:
            first, k = which
            if isinstance(first, int):
                kind = ComponentKind.COS if first == 1 else ComponentKind.SIN if first == 2 else None
            else:
                kind = ComponentKind(first)
    except (ValueError, TypeError):
        raise UnknownComponent(f"unknown component selector {which!r}")

    if kind is None:
        raise UnknownComponent(f"amplitude index must be 1 (cos) or 2 (sin), got {which!r}")
    if kind is ComponentKind.TREND:
        return kind, 0
    if not 1 <= k <= n_harmonics:
        raise UnknownComponent(f"harmonic {k} does not exist; the model has K={n_harmonics}")
    return kind, k


def component_band(fit: FitResult, design: DesignMatrix, P: np.ndarray, which: Which,
                   level: float = 0.95, sigma2: Optional[float] = None) -> Band:
    """Band for the trend (``"trend"``) or an amplitude curve (``(ell, k)`` or ``("cos", k)``)."""
    _check_level(level)
    kind, k = _resolve_component(which, design.n_harmonics)
    block = design.block_slice(kind, k)

    sigma2 = fit.sigma2 if sigma2 is None else sigma2
    V = theta_covariance(design, P, sigma2)
    B = design.basis.matrix
    half = normal_quantile(1.0 - (1.0 - level) / 2.0) * _pointwise_sd(B, V[block, block])

    if kind is ComponentKind.TREND:
        center = fit.components.trend
    else:
        center = fit.components.amplitude(1 if kind is ComponentKind.COS else 2, k)
    center = np.asarray(center)
    return Band(times=np.asarray(design.basis.times), center=center,
                lower=center - half, upper=center + half, level=level)


def empirical_band(curves: np.ndarray, level: float = 0.95,
                   times: Optional[Sequence[float]] = None) -> Band:
    """Pointwise order-statistic band over M replicate curves (rows).

    The lower edge is the ceil(M(1-level)/2)-th smallest value and the upper
    edge its mirror from the top: the 5th and 196th of 200 at level 0.95.
    """
    _check_level(level)
    curves = np.asarray(curves, dtype=np.float64)
    if curves.ndim != 2 or curves.shape[0] < 2:
        raise TooFewReplicates(f"need at least 2 replicate curves, got shape {curves.shape}")

    M = curves.shape[0]
    lower_rank = max(1, math.ceil(M * (1.0 - level) / 2.0 - 1e-9))
    upper_rank = M + 1 - lower_rank
    ordered = np.sort(curves, axis=0)

    times = np.arange(curves.shape[1], dtype=np.float64) if times is None else np.asarray(times)
    return Band(times=times, center=curves.mean(axis=0), lower=ordered[lower_rank - 1],
                upper=ordered[upper_rank - 1], level=level)
