from .fit import Coefficients, Components, FitResult, PenalizedSystem, error_variance, extract_components, fit_pols, fit_series, hat_trace
from .intervals import Band, component_band, empirical_band, normal_quantile, prediction_band, theta_covariance
from .replicates import ReplicateCurves, replicate_fits
from .selection import GridSearch, SelectionResult, TuningRow, aic, grid_search

__all__ = [
    "Coefficients",
    "Components",
    "FitResult",
    "PenalizedSystem",
    "error_variance",
    "extract_components",
    "fit_pols",
    "fit_series",
    "hat_trace",
    "Band",
    "component_band",
    "empirical_band",
    "normal_quantile",
    "prediction_band",
    "theta_covariance",
    "ReplicateCurves",
    "replicate_fits",
    "GridSearch",
    "SelectionResult",
    "TuningRow",
    "aic",
    "grid_search",
]
