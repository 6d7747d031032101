from dataclasses import dataclass, field
import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..constants import (
    BLAZHKO_A0,
    BLAZHKO_AM,
    BLAZHKO_DEPTH,
    BLAZHKO_FM,
    BLAZHKO_HARMONICS,
    BLAZHKO_N,
    BLAZHKO_N_DESIGN,
    BLAZHKO_PHI_M_DEG,
    BLAZHKO_SIGMA2,
    BLAZHKO_T_END,
    BLAZHKO_T_START,
)
from ..framework.timeseries import TimeSeries
from .modulation import gen_am_harmonic
from .scenarios import GroundTruth


logger = logging.getLogger("lc_modulation.blazhko")


@dataclass(frozen=True)
class BlazhkoParams:
    """Amplitude-modulated RR Lyrae light curve; phases in degrees."""
    a0: float = BLAZHKO_A0
    harmonics: Tuple[Tuple[float, float, float], ...] = field(
        default_factory=lambda: tuple(BLAZHKO_HARMONICS)
    )
    a_m: float = BLAZHKO_AM
    f_m: float = BLAZHKO_FM
    phi_m: float = BLAZHKO_PHI_M_DEG
    h_depth: float = BLAZHKO_DEPTH
    sigma2: float = BLAZHKO_SIGMA2

    def __post_init__(self):
        errors = []
        if not self.harmonics:
            errors.append("at least one harmonic is required")
        if any(frequency <= 0 for frequency, _, _ in self.harmonics):
            errors.append("harmonic frequencies must be positive")
        if self.h_depth <= 0 or self.a_m <= 0:
            errors.append("a_m and h_depth must be positive (U_c = a_m / h_depth > 0)")
        if self.sigma2 < 0:
            errors.append("sigma2 must be non-negative")
        if errors:
            raise ValueError(f"Invalid Blazhko parameters: {', '.join(errors)}")

    @property
    def u_c(self) -> float:
        return self.a_m / self.h_depth

    @property
    def frequencies(self) -> List[float]:
        return [frequency for frequency, _, _ in self.harmonics]

    def radian_harmonics(self) -> List[Tuple[float, float, float]]:
        return [(frequency, amplitude, np.deg2rad(phase)) for frequency, amplitude, phase in self.harmonics]

    def modulation_factor(self, t: np.ndarray) -> np.ndarray:
        """1 + U_m(t) / U_c."""
        return 1 + self.a_m * np.sin(2 * np.pi * self.f_m * t + np.deg2rad(self.phi_m)) / self.u_c


@dataclass(frozen=True)
class TimeDesign:
    times: np.ndarray
    t0: float
    delta: float


def blazhko_times(n: int = BLAZHKO_N, n_design: int = BLAZHKO_N_DESIGN,
                  t_start: float = BLAZHKO_T_START, t_end: float = BLAZHKO_T_END,
                  seed: Union[int, np.random.Generator, None] = None) -> TimeDesign:
    """n points drawn without replacement from an equally spaced design, endpoints included.

    Design point k = 1..n_design sits at t0 + k * delta.
    """
    if not 2 <= n <= n_design:
        raise ValueError(f"need 2 <= n <= n_design, got n={n}, n_design={n_design}")
    rng = np.random.default_rng(seed)
    delta = (t_end - t_start) / (n_design - 1)
    t0 = t_start - delta
    interior = rng.choice(np.arange(2, n_design), size=n - 2, replace=False)
    indices = np.sort(np.concatenate([[1], interior, [n_design]]))
    return TimeDesign(times=t0 + indices * delta, t0=t0, delta=delta)


def gen_blazhko_am(p: Optional[BlazhkoParams] = None, times: Optional[Sequence[float]] = None,
                   seed: Union[int, np.random.Generator, None] = None,
                   n: int = BLAZHKO_N, n_design: int = BLAZHKO_N_DESIGN) -> Tuple[TimeSeries, GroundTruth]:
    p = p or BlazhkoParams()
    rng = np.random.default_rng(seed)

    t0 = delta = None
    if times is None:
        design = blazhko_times(n, n_design, seed=rng)
        times, t0, delta = design.times, design.t0, design.delta
    times = np.asarray(times, dtype=np.float64)

    factor = p.modulation_factor(times)
    harmonics = p.radian_harmonics()
    mu = gen_am_harmonic(p.a0, harmonics, p.h_depth, p.f_m, np.deg2rad(p.phi_m), times)

    amplitudes = np.array([
        [amplitude * np.sin(phase) * factor for _, amplitude, phase in harmonics],
        [amplitude * np.cos(phase) * factor for _, amplitude, phase in harmonics],
    ])
    truth = GroundTruth(times=times, trend=p.a0 * factor, amplitudes=amplitudes,
                        frequencies=p.frequencies)

    values = mu + rng.normal(0.0, np.sqrt(p.sigma2), size=len(times))
    logger.debug(f"Simulated Blazhko light curve with N={len(times)}")
    return TimeSeries.from_arrays(times, values, t0=t0, delta=delta), truth
