from dataclasses import dataclass, field
import logging
from typing import Dict, Sequence

import numpy as np

from ..config import SimulationConfig
from ..constants import (
    AR2_N,
    BLAZHKO_N,
    DEMO_N,
    DEMO_SIGMA2,
    SCENARIO_N,
    SCENARIO_SIGMA2,
    SimulationKind,
)
from ..framework.timeseries import TimeSeries
from ..spectral.ar2 import Ar2Params
from .ar2 import gen_ar2_blocks
from .blazhko import BlazhkoParams, gen_blazhko_am
from .scenarios import gen_demo, gen_scenario


@dataclass
class SimulationOutput:
    kind: SimulationKind
    series: TimeSeries
    truth: Dict[str, Sequence[float]]
    meta: Dict[str, object] = field(default_factory=dict)

    def data_columns(self) -> Dict[str, np.ndarray]:
        return {"time": self.series.times, "value": self.series.values}


class SimulationExecutor:

    def __init__(self):
        self.logger = logging.getLogger("lc_modulation.simulation_executor")

    def _scenario(self, config: SimulationConfig) -> SimulationOutput:
        sigma2 = SCENARIO_SIGMA2 if config.sigma2 is None else config.sigma2
        series, truth = gen_scenario(config.kind.value, n=config.n or SCENARIO_N,
                                     seed=config.seed, sigma2=sigma2)
        return SimulationOutput(config.kind, series, truth.columns(),
                                {"frequencies": truth.frequencies})

    def _demo(self, config: SimulationConfig) -> SimulationOutput:
        sigma2 = DEMO_SIGMA2 if config.sigma2 is None else config.sigma2
        series, truth = gen_demo(n=config.n or DEMO_N, seed=config.seed, sigma2=sigma2)
        return SimulationOutput(config.kind, series, truth.columns(),
                                {"frequencies": truth.frequencies})

    def _blazhko(self, config: SimulationConfig) -> SimulationOutput:
        params = BlazhkoParams() if config.sigma2 is None else BlazhkoParams(sigma2=config.sigma2)
        series, truth = gen_blazhko_am(params, seed=config.seed, n=config.n or BLAZHKO_N,
                                       n_design=config.n_design)
        return SimulationOutput(config.kind, series, truth.columns(),
                                {"frequencies": truth.frequencies, "t0": series.t0, "delta": series.delta})

    def _ar2(self, config: SimulationConfig) -> SimulationOutput:
        params = Ar2Params() if config.sigma2 is None else Ar2Params(sigma2=config.sigma2)
        sample = gen_ar2_blocks(params, N=config.n or AR2_N, n_blocks=config.n_blocks,
                                block_len=config.block_len, keep=config.keep, seed=config.seed)
        return SimulationOutput(
            config.kind, sample.sample,
            {"full_time": sample.full.times, "full_value": sample.full.values},
            {"t0": sample.full.t0, "delta": sample.full.delta, "n_grid": len(sample.full),
             "blocks": sample.blocks.tolist()},
        )

    def execute(self, config: SimulationConfig) -> SimulationOutput:
        kind = SimulationKind(config.kind)

        simulations = {
            SimulationKind.SINUSOIDAL: lambda: self._scenario(config),
            SimulationKind.POLYNOMIAL: lambda: self._scenario(config),
            SimulationKind.BLAZHKO: lambda: self._blazhko(config),
            SimulationKind.AR2: lambda: self._ar2(config),
            SimulationKind.DEMO: lambda: self._demo(config),
        }

        simulation = simulations.get(kind)
        if simulation is None:
            self.logger.error(f"No generator defined for simulation: {kind}")
            raise ValueError(f"unsupported simulation kind '{kind.value}'")

        output = simulation()
        self.logger.info(f"Simulated '{kind.value}' with seed {config.seed}: {len(output.series)} observations")
        return output
