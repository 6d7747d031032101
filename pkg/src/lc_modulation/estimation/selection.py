from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
import itertools
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.model_selection import ParameterGrid

from ..basis.design import design_for_times
from ..basis.penalty import penalty_block
from ..config import BasisConfig, ModelConfig, TuningConfig
from ..exceptions import AllFitsFailed, ModulationError
from ..framework.results import finite_or_none
from ..framework.timeseries import TimeSeries
from .fit import fit_pols


logger = logging.getLogger("lc_modulation.selection")


def aic(y: Sequence[float], fitted: Sequence[float], edf: float, sigma2_0: float) -> float:
    y = np.asarray(y, dtype=np.float64)
    fitted = np.asarray(fitted, dtype=np.float64)
    return float(np.mean((y - fitted) ** 2) + 2.0 * edf * sigma2_0 / len(y))


@dataclass
class TuningRow:
    n_intervals: int
    degree: int
    penalty_order: int
    n_harmonics: int
    group_taus: Tuple[float, ...]
    aic: float = math.inf
    mse: float = math.nan
    edf: float = math.nan
    sigma2_0: float = math.nan
    error: Optional[str] = None

    @property
    def n_basis(self) -> int:
        return self.n_intervals + self.degree

    @property
    def key(self) -> Tuple:
        return (self.n_intervals, self.degree, self.penalty_order, self.n_harmonics, self.group_taus)

    @property
    def failed(self) -> bool:
        return self.error is not None

    def rank(self) -> Tuple:
        edf = self.edf if not math.isnan(self.edf) else math.inf
        return (self.aic, edf, self.key)

    def to_dict(self) -> Dict[str, Any]:
        row = asdict(self)
        row["group_taus"] = list(self.group_taus)
        for name in ("aic", "mse", "edf", "sigma2_0"):
            row[name] = finite_or_none(row[name])
        row["n_basis"] = self.n_basis
        return row


@dataclass
class SelectionResult:
    best: TuningRow
    aic_table: List[TuningRow]
    best_spec: ModelConfig = field(repr=False, default=None)

    def sorted_table(self) -> List[TuningRow]:
        return sorted(self.aic_table, key=TuningRow.rank)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "best": self.best.to_dict(),
            "best_taus": self.best_spec.resolved_taus() if self.best_spec else None,
            "n_configurations": len(self.aic_table),
            "n_failed": sum(row.failed for row in self.aic_table),
            "aic_table": [row.to_dict() for row in self.sorted_table()],
        }


class GridSearch:
    """Exhaustive AIC search; the tau=0 baseline is refitted per (J, d, r, K)."""

    def __init__(self, grid: TuningConfig):
        self.grid = grid
        self.logger = logging.getLogger("lc_modulation.grid_search")

    def _spec(self, structure: Dict[str, int], taus: List[float]) -> ModelConfig:
        return ModelConfig(
            frequencies=list(self.grid.frequencies[:structure["n_harmonics"]]),
            extra_frequencies=list(self.grid.extra_frequencies),
            basis=BasisConfig(n_intervals=structure["n_intervals"], degree=structure["degree"]),
            penalty_order=structure["penalty_order"],
            taus=taus,
        )

    def _structures(self) -> List[Dict[str, int]]:
        return list(ParameterGrid({
            "n_intervals": self.grid.n_intervals,
            "degree": self.grid.degrees,
            "penalty_order": self.grid.penalty_orders,
            "n_harmonics": self.grid.candidate_harmonics(),
        }))

    def _evaluate_structure(self, ts: TimeSeries, structure: Dict[str, int]) -> List[TuningRow]:
        group_combos = list(itertools.product(*self.grid.group_grids()))
        rows = [TuningRow(group_taus=tuple(float(v) for v in combo), **structure) for combo in group_combos]

        n_taus = 2 * (structure["n_harmonics"] + len(self.grid.extra_frequencies)) + 1
        try:
            design = design_for_times(ts.times, self._spec(structure, [0.0] * n_taus))
            baseline = fit_pols(design, ts.values, np.zeros((design.n_columns, design.n_columns)))
            sigma2_0 = baseline.sigma2
            if math.isnan(sigma2_0):
                raise ModulationError("tau=0 fit leaves no residual degrees of freedom")
        except (ModulationError, ValueError) as e:
            self.logger.warning(f"Baseline fit failed for {structure}: {e}")
            for row in rows:
                row.error = f"baseline: {e}"
            return rows

        for row in rows:
            taus = self.grid.expand_taus(row.group_taus, structure["n_harmonics"])
            try:
                spec = self._spec(structure, taus)
                fit = fit_pols(design, ts.values, penalty_block(spec.penalty_spec()))
            except (ModulationError, ValueError) as e:
                self.logger.warning(f"Configuration {row.key} failed: {e}")
                row.error = str(e)
                continue
            row.sigma2_0 = sigma2_0
            row.mse = fit.mse
            row.edf = fit.edf
            row.aic = aic(ts.values, fit.fitted, fit.edf, sigma2_0)
        return rows

    def run(self, ts: TimeSeries, threads: Optional[int] = None) -> SelectionResult:
        structures = self._structures()
        threads = threads or self.grid.threads
        self.logger.info(
            f"Searching {len(structures)} basis configurations x "
            f"{math.prod(len(g) for g in self.grid.group_grids())} tau combinations on {threads} thread(s)"
        )

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                batches = list(pool.map(lambda s: self._evaluate_structure(ts, s), structures))
        else:
            batches = [self._evaluate_structure(ts, s) for s in structures]

        table = sorted((row for batch in batches for row in batch), key=lambda row: row.key)
        if all(row.failed for row in table):
            raise AllFitsFailed(f"all {len(table)} configurations failed")

        best = min(table, key=TuningRow.rank)
        best_spec = self._spec(
            {"n_intervals": best.n_intervals, "degree": best.degree,
             "penalty_order": best.penalty_order, "n_harmonics": best.n_harmonics},
            self.grid.expand_taus(best.group_taus, best.n_harmonics),
        )
        self.logger.info(f"AIC winner: J={best.n_basis}, d={best.degree}, r={best.penalty_order}, "
                         f"K={best.n_harmonics}, taus={list(best.group_taus)}, AIC={best.aic:.6g}")
        return SelectionResult(best=best, aic_table=table, best_spec=best_spec)


def grid_search(ts: TimeSeries, grid: TuningConfig, threads: Optional[int] = None) -> SelectionResult:
    return GridSearch(grid).run(ts, threads)
