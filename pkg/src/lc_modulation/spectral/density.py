from dataclasses import dataclass
import logging
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.signal import convolve
from scipy.stats import norm

from ..config import get_config
from ..constants import Normalization
from ..exceptions import (
    BadRange,
    NonPositivePsd,
    NumericalFailure,
    ShapeMismatch,
    TooFewReplicates,
    WindowTransformUnderflow,
)
from .fourier import FourierGrid, PeriodogramEstimate, dft, idft


logger = logging.getLogger("lc_modulation.density")

_KERNEL_TRUNCATE = 8.0


@dataclass
class PsdEstimate:
    grid: FourierGrid
    periodogram: np.ndarray
    window: np.ndarray
    raw: np.ndarray
    smoothed: np.ndarray
    bandwidth: float

    def to_columns(self) -> Dict[str, np.ndarray]:
        return {
            "lambda": self.grid.angular,
            "f": self.grid.frequencies,
            "I": self.periodogram,
            "W_real": self.window,
            "raw": self.raw,
            "smoothed": self.smoothed,
        }


@dataclass
class WhitenessReport:
    band: Tuple[float, float]
    n_points: int
    ratio: float
    cv: float
    flat_ratio: float
    white: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "band": list(self.band),
            "n_points": self.n_points,
            "max_min_ratio": self.ratio,
            "cv": self.cv,
            "flat_ratio": self.flat_ratio,
            "white": self.white,
        }


def deconvolve_psd(perio: PeriodogramEstimate, floor: Optional[float] = None,
                   imag_tol: Optional[float] = None, values: Optional[np.ndarray] = None) -> np.ndarray:
    """P(lambda_j) = N_I / (2 pi) * idft(dft(I) / dft(W))[j].

    ``values`` replaces the periodogram ordinates, e.g. by a smoothed or
    replicate-averaged version on the same grid.
    """
    spectral = get_config().get_spectral_config()
    floor = spectral["deconv_floor"] if floor is None else floor
    imag_tol = spectral["imag_tol"] if imag_tol is None else imag_tol

    I = perio.values if values is None else np.asarray(values, dtype=np.float64)
    if I.shape != perio.window.shape:
        raise ShapeMismatch(f"periodogram {I.shape} and window {perio.window.shape} differ")

    FW = dft(perio.window)
    magnitude = np.abs(FW)
    small = np.flatnonzero(magnitude < floor * magnitude.max())
    if small.size:
        raise WindowTransformUnderflow(
            f"{small.size} of {len(FW)} window-transform entries fall below "
            f"{floor:.1e} x max; deconvolution is ill-posed for this sampling",
            indices=(small + 1).tolist(),
        )

    n_grid = perio.grid.n_grid
    P = idft(dft(I) / FW) * n_grid / (2.0 * np.pi)

    scale = np.max(np.abs(P.real))
    worst = np.max(np.abs(P.imag))
    if scale > 0 and worst > imag_tol * scale:
        raise NumericalFailure(
            f"deconvolved spectrum has imaginary part {worst:.3e} > {imag_tol:.1e} x {scale:.3e}; "
            f"check the grid embedding"
        )
    logger.debug(f"Deconvolved {n_grid} ordinates, max |Im| = {worst:.3e}")
    return P.real


def _kernel_weights(lam: np.ndarray, h: float, period: Optional[float] = None) -> np.ndarray:
    distance = np.subtract.outer(lam, lam)
    if period is not None:
        distance = np.abs(distance)
        distance = np.minimum(distance, period - distance)
    return norm.pdf(distance / h) / h


def _uniform_step(lam: np.ndarray) -> Optional[float]:
    if lam.size < 2:
        return None
    steps = np.diff(lam)
    step = float(steps.mean())
    if step > 0 and np.allclose(steps, step, rtol=1e-8, atol=0.0):
        return step
    return None


def _circular_sums(raw: np.ndarray, step: float, h: float) -> Tuple[np.ndarray, np.ndarray]:
    n = len(raw)
    offsets = np.arange(n)
    kernel = norm.pdf(np.minimum(offsets, n - offsets) * step / h) / h
    sums = np.fft.irfft(np.fft.rfft(raw) * np.fft.rfft(kernel), n)
    return sums, np.full(n, kernel.sum())


def _linear_sums(raw: np.ndarray, step: float, h: float) -> Tuple[np.ndarray, np.ndarray]:
    n = len(raw)
    half = min(n - 1, int(np.ceil(_KERNEL_TRUNCATE * h / step)))
    kernel = norm.pdf(np.arange(-half, half + 1) * step / h) / h
    return convolve(raw, kernel, mode="same"), convolve(np.ones(n), kernel, mode="same")


def smooth_psd(raw: Sequence[float], grid: Union[FourierGrid, Sequence[float]], h: float,
               normalization: Union[str, Normalization] = Normalization.COUNT,
               period: Optional[float] = None) -> np.ndarray:
    """Gaussian-kernel smoothing over frequencies.

    ``count`` divides by the number of frequencies N_lambda; ``kernel``
    divides by the sum of the weights in each row (Nadaraya-Watson).
    With ``period`` frequency distances wrap around, as on a full Fourier grid.

    Equally spaced frequencies are smoothed by convolution: exact and
    circular when ``period`` spans the grid, otherwise with the kernel cut
    at 8 bandwidths. Irregular frequencies use the dense weight matrix.
    """
    if h <= 0:
        raise ValueError(f"bandwidth must be positive, got {h}")
    raw = np.asarray(raw, dtype=np.float64)
    lam = grid.angular if isinstance(grid, FourierGrid) else np.asarray(grid, dtype=np.float64)
    if raw.shape != lam.shape:
        raise ShapeMismatch(f"raw spectrum {raw.shape} and grid {lam.shape} differ")

    step = _uniform_step(lam)
    if step is not None and period is not None and np.isclose(period, step * len(lam), rtol=1e-8):
        sums, totals = _circular_sums(raw, step, h)
    elif step is not None and period is None:
        sums, totals = _linear_sums(raw, step, h)
    else:
        weights = _kernel_weights(lam, h, period)
        sums, totals = weights @ raw, weights.sum(axis=1)

    if Normalization(normalization) is Normalization.KERNEL:
        return sums / totals
    return sums / len(lam)


def estimate_psd(perio: PeriodogramEstimate, bandwidth: float, presmooth: bool = True,
                 normalization: Union[str, Normalization] = Normalization.KERNEL,
                 presmooth_bandwidth: Optional[float] = None) -> PsdEstimate:
    """Deconvolution estimate from a single realization.

    With ``presmooth`` the periodogram is kernel-averaged over frequencies
    before deconvolution, standing in for its expectation. The average runs
    around the circle of grid frequencies so that I(lambda_j) = I(lambda_{N-j})
    still holds and the deconvolution stays real.
    """
    I = perio.values
    if presmooth:
        period = 2.0 * np.pi / perio.grid.delta
        I = smooth_psd(I, perio.grid, presmooth_bandwidth or bandwidth, Normalization.KERNEL, period)
    raw = deconvolve_psd(perio, values=I)
    smoothed = smooth_psd(raw, perio.grid, bandwidth, normalization)
    return PsdEstimate(grid=perio.grid, periodogram=perio.values, window=perio.window,
                       raw=raw, smoothed=smoothed, bandwidth=bandwidth)


def estimate_psd_replicates(periodograms: Sequence[PeriodogramEstimate], bandwidth: float,
                            normalization: Union[str, Normalization] = Normalization.KERNEL) -> PsdEstimate:
    """Deconvolution estimate with the replicate-mean periodogram and window."""
    if len(periodograms) < 1:
        raise TooFewReplicates("no periodograms to average")
    grid = periodograms[0].grid
    if any(p.grid != grid for p in periodograms):
        raise ShapeMismatch("replicate periodograms live on different Fourier grids")

    mean = PeriodogramEstimate(
        grid=grid,
        values=np.mean([p.values for p in periodograms], axis=0),
        window=np.mean([p.window for p in periodograms], axis=0),
        n_obs=periodograms[0].n_obs,
    )
    raw = deconvolve_psd(mean)
    smoothed = smooth_psd(raw, grid, bandwidth, normalization)
    logger.info(f"Averaged {len(periodograms)} periodograms on {grid.n_grid} frequencies")
    return PsdEstimate(grid=grid, periodogram=mean.values, window=mean.window,
                       raw=raw, smoothed=smoothed, bandwidth=bandwidth)


def whiteness_check(psd: PsdEstimate, band: Optional[Tuple[float, float]] = None,
                    flat_ratio: Optional[float] = None) -> WhitenessReport:
    """Flatness of the smoothed spectrum over an angular-frequency band.

    The default band is (0, pi / delta], the first half of the grid.
    """
    flat_ratio = get_config().get_spectral_config()["flat_ratio"] if flat_ratio is None else flat_ratio
    lam = psd.grid.angular
    if band is None:
        band = (0.0, np.pi / psd.grid.delta)
    lo, hi = band
    if not hi > lo:
        raise BadRange(f"band must satisfy low < high, got {band}")

    selected = (lam >= lo) & (lam <= hi)
    values = psd.smoothed[selected]
    if values.size == 0:
        raise BadRange(f"no grid frequencies inside band {band}")
    bad = np.flatnonzero(values <= 0)
    if bad.size:
        raise NonPositivePsd(
            f"{bad.size} non-positive spectrum value(s) in band {band}; first at lambda={lam[selected][bad[0]]:.6g}"
        )

    ratio = float(values.max() / values.min())
    cv = float(values.std() / values.mean())
    white = ratio <= flat_ratio
    logger.info(f"Whiteness over {values.size} frequencies: max/min={ratio:.3f}, cv={cv:.3f}, white={white}")
    return WhitenessReport(band=(float(lo), float(hi)), n_points=int(values.size), ratio=ratio,
                           cv=cv, flat_ratio=float(flat_ratio), white=bool(white))
