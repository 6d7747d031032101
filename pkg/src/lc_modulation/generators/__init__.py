from .ar2 import BlockSample, gen_ar2_blocks, simulate_ar2
from .benko import Benko2011Params, BenkoParams, benko2011_components, benko2011_eval, benko_components, benko_model_eval
from .blazhko import BlazhkoParams, blazhko_times, gen_blazhko_am
from .modulation import CarrierParams, ModulationParams, am_sidebands, gen_am, gen_comb, gen_fm
from .scenarios import GroundTruth, gen_demo, gen_scenario, sample_uniform_times, scenario_truth
from .simulation_executor import SimulationExecutor, SimulationOutput

__all__ = [
    "BlockSample",
    "gen_ar2_blocks",
    "simulate_ar2",
    "Benko2011Params",
    "BenkoParams",
    "benko2011_components",
    "benko2011_eval",
    "benko_components",
    "benko_model_eval",
    "BlazhkoParams",
    "blazhko_times",
    "gen_blazhko_am",
    "CarrierParams",
    "ModulationParams",
    "am_sidebands",
    "gen_am",
    "gen_comb",
    "gen_fm",
    "GroundTruth",
    "gen_demo",
    "gen_scenario",
    "sample_uniform_times",
    "scenario_truth",
    "SimulationExecutor",
    "SimulationOutput",
]
