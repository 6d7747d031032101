from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..constants import AR2_DELTA, AR2_PHI1, AR2_PHI2, AR2_SIGMA2
from ..exceptions import NonStationary


@dataclass(frozen=True)
class Ar2Params:
    phi1: float = AR2_PHI1
    phi2: float = AR2_PHI2
    sigma2: float = AR2_SIGMA2
    delta: float = AR2_DELTA

    def __post_init__(self):
        if self.sigma2 <= 0:
            raise ValueError(f"innovation variance must be positive, got {self.sigma2}")
        if self.delta <= 0:
            raise ValueError(f"sampling interval must be positive, got {self.delta}")

    @property
    def stationary(self) -> bool:
        return abs(self.phi2) < 1 and self.phi2 + self.phi1 < 1 and self.phi2 - self.phi1 < 1

    def check(self) -> "Ar2Params":
        if not self.stationary:
            raise NonStationary(f"phi1={self.phi1}, phi2={self.phi2} lie outside the stationarity triangle")
        return self


def ar2_psd(p: Ar2Params, lam: Union[float, Sequence[float]]) -> Union[float, np.ndarray]:
    p.check()
    c = np.cos(np.asarray(lam, dtype=np.float64) * p.delta)
    bracket = (1 + p.phi1 ** 2 + p.phi2 ** 2 + 2 * p.phi2
               + 2 * (p.phi1 * p.phi2 - p.phi1) * c - 4 * p.phi2 * c ** 2)
    psd = p.sigma2 / (2 * np.pi) / bracket
    return float(psd) if np.ndim(psd) == 0 else psd


def ar2_autocovariance(p: Ar2Params, max_lag: int) -> np.ndarray:
    """gamma(0..max_lag) from the Yule-Walker equations."""
    p.check()
    phi1, phi2 = p.phi1, p.phi2
    gamma = np.empty(max_lag + 1)
    gamma[0] = p.sigma2 * (1 - phi2) / ((1 + phi2) * ((1 - phi2) ** 2 - phi1 ** 2))
    if max_lag >= 1:
        gamma[1] = phi1 * gamma[0] / (1 - phi2)
    for lag in range(2, max_lag + 1):
        gamma[lag] = phi1 * gamma[lag - 1] + phi2 * gamma[lag - 2]
    return gamma


def ar2_peak_frequency(p: Ar2Params) -> float:
    """Angular frequency in [0, pi / delta] where ar2_psd is largest."""
    p.check()
    candidates = [0.0, np.pi / p.delta]
    if p.phi2 != 0:
        cos_peak = p.phi1 * (p.phi2 - 1) / (4 * p.phi2)
        if -1 <= cos_peak <= 1:
            candidates.append(float(np.arccos(cos_peak)) / p.delta)
    return max(candidates, key=lambda lam: ar2_psd(p, lam))
