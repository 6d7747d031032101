from dataclasses import dataclass
import logging
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from ..constants import (
    DEMO_FREQUENCY,
    DEMO_N,
    DEMO_SIGMA2,
    DEMO_T_MAX,
    SCENARIO_N,
    SCENARIO_SIGMA2,
    ScenarioKind,
)
from ..exceptions import BadRange
from ..framework.timeseries import TimeSeries
from .modulation import ArrayLike, harmonic_signal


logger = logging.getLogger("lc_modulation.scenarios")


@dataclass
class GroundTruth:
    """Noise-free trend and amplitude curves at ``times``; amplitudes have shape (2, K, N)."""
    times: np.ndarray
    trend: np.ndarray
    amplitudes: np.ndarray
    frequencies: List[float]

    @property
    def mu(self) -> np.ndarray:
        return harmonic_signal(self.trend, self.amplitudes, self.frequencies, self.times)

    def columns(self) -> Dict[str, np.ndarray]:
        columns = {"time": self.times, "mu": self.mu, "m": self.trend}
        for k in range(1, len(self.frequencies) + 1):
            columns[f"g1{k}"] = self.amplitudes[0, k - 1]
            columns[f"g2{k}"] = self.amplitudes[1, k - 1]
        return columns


CurveSet = Tuple[Callable[[np.ndarray], np.ndarray], List[Tuple[Callable, Callable]], List[float]]


def _sinusoidal() -> CurveSet:
    return (
        lambda t: np.sin(2 * np.pi * t),
        [
            (lambda t: np.cos(9 * np.pi * t), lambda t: np.sin(6 * np.pi * t)),
            (lambda t: np.cos(4 * np.pi * t), lambda t: np.sin(7 * np.pi * t)),
        ],
        [20.0, 50.0],
    )


def _polynomial() -> CurveSet:
    return (
        lambda t: 0.2 * t - 5 * t ** 2 + 5.5 * t ** 3,
        [
            (lambda t: 4 * t ** 3 - 5 * t ** 2, lambda t: -0.5 - 0.5 * t + 2.5 * t ** 2 - 0.5 * t ** 3),
            (lambda t: -t + t ** 2 + 1.3 * t ** 3, lambda t: 0.5 + 2 * t ** 2 - 3 * t ** 3),
        ],
        [15.0, 20.0],
    )


def _demo() -> CurveSet:
    return (
        lambda t: -0.05 * t,
        [(lambda t: 0.0002 * t - 0.0003 * t ** 2, lambda t: 1 - 0.0005 * t)],
        [DEMO_FREQUENCY],
    )


_CURVES: Dict[str, Callable[[], CurveSet]] = {
    ScenarioKind.SINUSOIDAL.value: _sinusoidal,
    ScenarioKind.POLYNOMIAL.value: _polynomial,
    "demo": _demo,
}


def scenario_truth(kind: Union[str, ScenarioKind], t: ArrayLike) -> GroundTruth:
    """Evaluate the curves of a scenario (or ``"demo"``) at arbitrary times."""
    name = kind.value if isinstance(kind, ScenarioKind) else str(kind)
    if name not in _CURVES:
        raise ValueError(f"unknown scenario '{name}'")
    trend, pairs, frequencies = _CURVES[name]()
    t = np.asarray(t, dtype=np.float64)
    amplitudes = np.array([[cos_curve(t) * np.ones_like(t) for cos_curve, _ in pairs],
                           [sin_curve(t) * np.ones_like(t) for _, sin_curve in pairs]])
    return GroundTruth(times=t, trend=trend(t), amplitudes=amplitudes, frequencies=list(frequencies))


def sample_uniform_times(n: int, theta1: float, theta2: float,
                         seed: Union[int, np.random.Generator, None] = None) -> np.ndarray:
    if not theta2 > theta1:
        raise BadRange(f"uniform range needs theta2 > theta1, got ({theta1}, {theta2})")
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return np.sort(rng.uniform(theta1, theta2, size=n))


def _simulate(kind: str, n: int, theta: Tuple[float, float], sigma2: float,
              seed: Union[int, np.random.Generator, None]) -> Tuple[TimeSeries, GroundTruth]:
    if sigma2 < 0:
        raise ValueError(f"noise variance must be non-negative, got {sigma2}")
    rng = np.random.default_rng(seed)
    times = sample_uniform_times(n, *theta, seed=rng)
    truth = scenario_truth(kind, times)
    values = truth.mu + rng.normal(0.0, np.sqrt(sigma2), size=n)
    logger.debug(f"Simulated '{kind}' with N={n}, sigma2={sigma2}")
    return TimeSeries.from_arrays(times, values), truth


def gen_scenario(kind: Union[str, ScenarioKind], n: int = SCENARIO_N,
                 seed: Union[int, np.random.Generator, None] = None,
                 sigma2: float = SCENARIO_SIGMA2) -> Tuple[TimeSeries, GroundTruth]:
    return _simulate(ScenarioKind(kind).value, n, (0.0, 1.0), sigma2, seed)


def gen_demo(n: int = DEMO_N, seed: Union[int, np.random.Generator, None] = None,
             sigma2: float = DEMO_SIGMA2, t_max: Optional[float] = None) -> Tuple[TimeSeries, GroundTruth]:
    """Slowly drifting single harmonic at 0.1 1/d used to illustrate AIC tuning."""
    return _simulate("demo", n, (0.0, t_max or DEMO_T_MAX), sigma2, seed)
