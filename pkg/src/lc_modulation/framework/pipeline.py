from dataclasses import dataclass, field
import logging
import math
import time
from typing import Dict, List, Optional

import numpy as np

from ..basis.design import DesignMatrix
from ..config import ModelConfig, RunConfig, SpectrumConfig, get_config
from ..estimation.fit import FitResult, fit_pols, fit_series
from ..estimation.intervals import Band, component_band, prediction_band
from ..estimation.selection import SelectionResult, aic, grid_search
from ..exceptions import ModulationError
from ..generators.simulation_executor import SimulationExecutor, SimulationOutput
from ..spectral.density import PsdEstimate, WhitenessReport, estimate_psd, whiteness_check
from ..spectral.fourier import grid_periodogram
from .results import FitReport
from .run_store import RunStore
from .timeseries import TimeSeries, embed_on_grid


@dataclass
class SpectrumOutcome:
    psd: PsdEstimate
    whiteness: WhitenessReport


@dataclass
class FitOutcome:
    series: TimeSeries
    fit: FitResult
    design: DesignMatrix
    P: np.ndarray
    sigma2_0: float
    aic: float
    prediction: Band
    components: Dict[str, Band] = field(default_factory=dict)
    residual_spectrum: Optional[SpectrumOutcome] = None

    def report(self, config: Dict) -> FitReport:
        return FitReport(mse=self.fit.mse, sigma2=self.fit.sigma2, edf=self.fit.edf, aic=self.aic,
                         sigma2_0=self.sigma2_0, n_obs=self.fit.n_obs,
                         n_coefficients=self.design.n_columns, config=config)


class ModulationPipeline:
    """fit -> bands -> residual spectrum -> whiteness, plus tune / spectrum / simulate."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.logger = logging.getLogger("lc_modulation.pipeline")
        self.store = RunStore(config.output_dir or get_config().output_dir)

    def _baseline_variance(self, design: DesignMatrix, y: np.ndarray) -> float:
        zero = np.zeros((design.n_columns, design.n_columns))
        try:
            return fit_pols(design, y, zero).sigma2
        except ModulationError as e:
            self.logger.warning(f"tau=0 baseline fit failed, AIC unavailable: {e}")
            return math.nan

    def fit(self, ts: TimeSeries, spec: Optional[ModelConfig] = None) -> FitOutcome:
        spec = spec or self.config.model
        if spec is None:
            raise ValueError("fit needs a model configuration")
        start_time = time.time()
        self.logger.info(f"Fitting N={len(ts)} observations with K={spec.n_harmonics}, "
                         f"J={spec.basis.n_basis}, r={spec.penalty_order}")

        fit, design, P = fit_series(ts.times, ts.values, spec)
        sigma2_0 = self._baseline_variance(design, ts.values)
        score = aic(ts.values, fit.fitted, fit.edf, sigma2_0) if math.isfinite(sigma2_0) else math.nan

        level = self.config.level
        components = {"m": component_band(fit, design, P, "trend", level)}
        for k in range(1, spec.n_harmonics + 1):
            components[f"g1{k}"] = component_band(fit, design, P, (1, k), level)
            components[f"g2{k}"] = component_band(fit, design, P, (2, k), level)

        outcome = FitOutcome(series=ts, fit=fit, design=design, P=P, sigma2_0=sigma2_0, aic=score,
                             prediction=prediction_band(fit, design, P, level), components=components)

        if self.config.spectrum is not None:
            outcome.residual_spectrum = self.spectrum(ts.with_values(fit.residuals))

        elapsed_time = time.time() - start_time
        self.logger.info(f"Fit completed in {elapsed_time:.2f} seconds: mse={fit.mse:.6g}, edf={fit.edf:.3f}")
        return outcome

    def tune(self, ts: TimeSeries) -> SelectionResult:
        if self.config.tuning is None:
            raise ValueError("tune needs a tuning configuration")
        return grid_search(ts, self.config.tuning)

    def spectrum(self, ts: TimeSeries, options: Optional[SpectrumConfig] = None) -> SpectrumOutcome:
        options = options or self.config.spectrum
        if options is None:
            raise ValueError("spectrum needs t0 and delta")
        embedding = embed_on_grid(ts, options.t0, options.delta, options.grid_tol, options.n_grid)
        self.logger.info(f"Residual spectrum on {embedding.n_grid} grid frequencies "
                         f"({embedding.fill_ratio():.1%} filled)")
        perio = grid_periodogram(embedding, ts.values)
        psd = estimate_psd(perio, options.bandwidth, presmooth=options.presmooth,
                           normalization=options.normalization)
        whiteness = whiteness_check(psd, options.band, options.flat_ratio)
        return SpectrumOutcome(psd=psd, whiteness=whiteness)

    def simulate(self) -> SimulationOutput:
        if self.config.simulation is None:
            raise ValueError("simulate needs a simulation configuration")
        return SimulationExecutor().execute(self.config.simulation)

    def save_fit(self, outcome: FitOutcome) -> List[str]:
        echo = self.config.echo()
        fit, band = outcome.fit, outcome.prediction
        self.store.save_csv("fit", echo, {
            "time": outcome.series.times,
            "y": outcome.series.values,
            "fitted": fit.fitted,
            "lower": band.lower,
            "upper": band.upper,
            "residual": fit.residuals,
        }, "curves")
        for name, component in outcome.components.items():
            self.store.save_csv("fit", echo, {
                "time": component.times,
                f"{name}_hat": component.center,
                "lower": component.lower,
                "upper": component.upper,
            }, name)
        if outcome.residual_spectrum is not None:
            self._save_spectrum_files("fit", echo, outcome.residual_spectrum)

        report = outcome.report(echo)
        report.files = list(self.store.written) + [self.store.path("fit", echo, "", "json").name]
        self.store.save_json("fit", echo, report.to_dict())
        return list(self.store.written)

    def save_tuning(self, result: SelectionResult) -> List[str]:
        echo = self.config.echo()
        table = result.sorted_table()
        self.store.save_csv("tune", echo, {
            "n_intervals": [row.n_intervals for row in table],
            "degree": [row.degree for row in table],
            "penalty_order": [row.penalty_order for row in table],
            "n_harmonics": [row.n_harmonics for row in table],
            **{f"tau_group{i + 1}": [row.group_taus[i] for row in table]
               for i in range(len(table[0].group_taus))},
            "aic": [row.aic for row in table],
            "mse": [row.mse for row in table],
            "edf": [row.edf for row in table],
        }, "aic")
        self.store.save_json("tune", echo, {**result.to_dict(), "config": echo})
        return list(self.store.written)

    def _save_spectrum_files(self, command: str, echo: Dict, outcome: SpectrumOutcome) -> None:
        self.store.save_csv(command, echo, outcome.psd.to_columns(), "psd")
        self.store.save_json(command, echo, {
            **outcome.whiteness.to_dict(),
            "bandwidth": outcome.psd.bandwidth,
            "n_grid": outcome.psd.grid.n_grid,
            "config": echo,
        }, "whiteness")

    def save_spectrum(self, outcome: SpectrumOutcome) -> List[str]:
        self._save_spectrum_files("spectrum", self.config.echo(), outcome)
        return list(self.store.written)

    def save_simulation(self, output: SimulationOutput) -> List[str]:
        echo = self.config.echo()
        self.store.save_csv("simulate", echo, output.data_columns(), "data")
        self.store.save_csv("simulate", echo, output.truth, "truth")
        self.store.save_json("simulate", echo, {
            "kind": output.kind.value,
            "n_obs": len(output.series),
            "meta": output.meta,
            "config": echo,
        })
        return list(self.store.written)
