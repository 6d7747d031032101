"""Time-varying harmonic models and residual spectra for unequally spaced light curves."""
from .config import BasisConfig, ModelConfig, RunConfig, SpectrumConfig, TuningConfig, get_config
from .framework.timeseries import TimeSeries, embed_on_grid
from .estimation.fit import FitResult, fit_pols, fit_series
from .estimation.selection import grid_search
from .spectral.density import estimate_psd, whiteness_check

__all__ = [
    "BasisConfig",
    "ModelConfig",
    "RunConfig",
    "SpectrumConfig",
    "TuningConfig",
    "get_config",
    "TimeSeries",
    "embed_on_grid",
    "FitResult",
    "fit_pols",
    "fit_series",
    "grid_search",
    "estimate_psd",
    "whiteness_check",
]
