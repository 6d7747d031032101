from .ar2 import Ar2Params, ar2_autocovariance, ar2_peak_frequency, ar2_psd
from .density import PsdEstimate, WhitenessReport, deconvolve_psd, estimate_psd, estimate_psd_replicates, smooth_psd, whiteness_check
from .fourier import FourierGrid, PeriodogramEstimate, dft, grid_periodogram, idft, periodogram, spectral_window

__all__ = [
    "Ar2Params",
    "ar2_autocovariance",
    "ar2_peak_frequency",
    "ar2_psd",
    "PsdEstimate",
    "WhitenessReport",
    "deconvolve_psd",
    "estimate_psd",
    "estimate_psd_replicates",
    "smooth_psd",
    "whiteness_check",
    "FourierGrid",
    "PeriodogramEstimate",
    "dft",
    "grid_periodogram",
    "idft",
    "periodogram",
    "spectral_window",
]
