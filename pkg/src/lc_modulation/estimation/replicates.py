from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import ModelConfig, get_config
from ..constants import ComponentKind
from ..exceptions import TooFewReplicates, UnknownComponent
from ..framework.timeseries import TimeSeries
from .fit import extract_components, fit_series
from .intervals import Band, empirical_band


logger = logging.getLogger("lc_modulation.replicates")

# seed -> (noisy series, anything carrying the truth); only the series is used here
Simulator = Callable[[int], Tuple[TimeSeries, object]]


@dataclass
class ReplicateCurves:
    """Fitted curves of M replicates evaluated on common times.

    ``amplitudes`` has shape (M, 2, K, n): [:, 0] multiplies cos, [:, 1] sin.
    """
    times: np.ndarray
    mu: np.ndarray
    trend: np.ndarray
    amplitudes: np.ndarray

    @property
    def n_replicates(self) -> int:
        return self.mu.shape[0]

    def curves(self, which: Union[str, Tuple[int, int]]) -> np.ndarray:
        """``"mu"``, ``"trend"`` or ``(ell, k)`` with ell in {1, 2}."""
        if which == "mu":
            return self.mu
        if which in ("trend", ComponentKind.TREND):
            return self.trend
        try:
            ell, k = which
            if ell in (1, 2) and 1 <= k <= self.amplitudes.shape[2]:
                return self.amplitudes[:, ell - 1, k - 1]
        except (TypeError, ValueError):
            pass
        raise UnknownComponent(f"no replicate curves for {which!r}")

    def band(self, which: Union[str, Tuple[int, int]], level: float = 0.95) -> Band:
        return empirical_band(self.curves(which), level, self.times)

    def mean_and_se(self, which: Union[str, Tuple[int, int]]) -> Tuple[np.ndarray, np.ndarray]:
        """Pointwise Monte-Carlo mean and its standard error."""
        stack = self.curves(which)
        return stack.mean(axis=0), stack.std(axis=0, ddof=1) / np.sqrt(stack.shape[0])


def _fit_on(ts: TimeSeries, spec: ModelConfig, times: np.ndarray):
    fit, design, _ = fit_series(ts.times, ts.values, spec)
    components = extract_components(fit.coefficients, design.basis.at(times), spec)
    return components.reassemble(spec.all_frequencies), components


def replicate_fits(simulate: Simulator, spec: ModelConfig, n_replicates: int,
                   times: Sequence[float], seed: int = 0,
                   threads: Optional[int] = None) -> ReplicateCurves:
    """Simulate and fit ``n_replicates`` series with seeds seed, seed+1, ...

    ``times`` must lie inside every replicate's knot domain, so interior
    points of the sampling range are the safe choice.
    """
    if n_replicates < 2:
        raise TooFewReplicates(f"need at least 2 replicates, got {n_replicates}")
    times = np.asarray(times, dtype=np.float64)
    threads = threads or get_config().threads

    def run(i: int):
        ts, _ = simulate(seed + i)
        return _fit_on(ts, spec, times)

    logger.info(f"Fitting {n_replicates} replicates on {threads} thread(s)")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(n_replicates)))
    else:
        results = [run(i) for i in range(n_replicates)]

    return ReplicateCurves(
        times=times,
        mu=np.array([mu for mu, _ in results]),
        trend=np.array([c.trend for _, c in results]),
        amplitudes=np.array([c.amplitudes for _, c in results]),
    )
