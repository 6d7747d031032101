from dataclasses import dataclass
import logging
from typing import Sequence, Union

import numpy as np

from ..exceptions import ShapeMismatch
from ..framework.timeseries import GridEmbedding


logger = logging.getLogger("lc_modulation.fourier")

_CHUNK = 512


@dataclass(frozen=True)
class FourierGrid:
    """lambda_j = 2 pi j / (N_I delta) for j = 1..N_I."""
    n_grid: int
    delta: float

    @property
    def index(self) -> np.ndarray:
        return np.arange(1, self.n_grid + 1)

    @property
    def frequencies(self) -> np.ndarray:
        return self.index / (self.n_grid * self.delta)

    @property
    def angular(self) -> np.ndarray:
        return 2.0 * np.pi * self.frequencies

    @property
    def nyquist_index(self) -> int:
        return self.n_grid // 2


@dataclass
class PeriodogramEstimate:
    grid: FourierGrid
    values: np.ndarray
    window: np.ndarray
    n_obs: int


def _exponential_sums(values: np.ndarray, times: np.ndarray, lam: np.ndarray) -> np.ndarray:
    out = np.empty(lam.shape, dtype=np.complex128)
    for start in range(0, len(lam), _CHUNK):
        block = lam[start:start + _CHUNK]
        out[start:start + _CHUNK] = np.exp(1j * np.outer(block, times)) @ values
    return out


def periodogram(values: Sequence[float], times: Sequence[float],
                lam: Union[float, Sequence[float]]) -> Union[float, np.ndarray]:
    """|sum_k x_k exp(i lam t_k)|^2 at each frequency in ``lam``."""
    values = np.asarray(values, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)
    if values.shape != times.shape:
        raise ShapeMismatch(f"values {values.shape} and times {times.shape} differ")
    scalar = np.ndim(lam) == 0
    power = np.abs(_exponential_sums(values.astype(np.complex128), times, np.atleast_1d(lam).astype(np.float64))) ** 2
    return float(power[0]) if scalar else power


def spectral_window(times: Sequence[float], lam: Union[float, Sequence[float]]) -> Union[float, np.ndarray]:
    """|sum_k exp(i lam t_k)|^2; real and non-negative, N^2 at lam = 0."""
    times = np.asarray(times, dtype=np.float64)
    return periodogram(np.ones_like(times), times, lam)


def dft(g: Sequence[complex]) -> np.ndarray:
    """h_k = sum_{j=1..m} g_j exp(-i k j 2 pi / m), k = 1..m; element 0 holds index 1."""
    g = np.asarray(g, dtype=np.complex128)
    return np.roll(np.fft.fft(np.roll(g, 1)), -1)


def idft(h: Sequence[complex]) -> np.ndarray:
    """g_j = (1/m) sum_{k=1..m} h_k exp(i k j 2 pi / m), j = 1..m."""
    h = np.asarray(h, dtype=np.complex128)
    return np.roll(np.fft.ifft(np.roll(h, 1)), -1)


def grid_periodogram(embedding: GridEmbedding, values: Sequence[float]) -> PeriodogramEstimate:
    """Periodogram and window on the Fourier grid of an embedded series.

    On lambda_j the phase of t0 cancels in the modulus and the sums reduce to
    an inverse transform of the zero-filled series.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.shape != embedding.indices.shape:
        raise ShapeMismatch(f"{len(values)} values for {len(embedding.indices)} grid indices")

    m = embedding.n_grid
    filled = np.zeros(m)
    filled[embedding.indices - 1] = values
    mask = np.zeros(m)
    mask[embedding.indices - 1] = 1.0

    power = np.abs(m * idft(filled)) ** 2
    window = np.abs(m * idft(mask)) ** 2
    logger.debug(f"Periodogram on {m} grid frequencies from {len(values)} observations")
    return PeriodogramEstimate(grid=FourierGrid(m, embedding.delta), values=power,
                               window=window, n_obs=len(values))
