from enum import Enum, IntEnum
from typing import Dict, List, Tuple
from dataclasses import dataclass


class ComponentKind(Enum):
    TREND = "trend"
    COS = "cos"
    SIN = "sin"


class ScenarioKind(Enum):
    SINUSOIDAL = "sinusoidal"
    POLYNOMIAL = "polynomial"


class SimulationKind(Enum):
    SINUSOIDAL = "sinusoidal"
    POLYNOMIAL = "polynomial"
    BLAZHKO = "blazhko"
    AR2 = "ar2"
    DEMO = "demo"


class Normalization(Enum):
    COUNT = "count"
    KERNEL = "kernel"


class ExitCode(IntEnum):
    OK = 0
    USAGE = 2
    NUMERICAL = 3


@dataclass
class SimulationInfo:
    name: str
    description: str
    truth_columns: List[str]


SIMULATION_INFO: Dict[SimulationKind, SimulationInfo] = {
    SimulationKind.SINUSOIDAL: SimulationInfo(
        name="Sinusoidal scenario",
        description="Trend and amplitudes are sinusoids in t on U(0,1) times, w = (40pi, 100pi)",
        truth_columns=["mu", "m", "g11", "g21", "g12", "g22"]
    ),

    SimulationKind.POLYNOMIAL: SimulationInfo(
        name="Polynomial scenario",
        description="Trend and amplitudes are global cubics on U(0,1) times, w = (30pi, 40pi)",
        truth_columns=["mu", "m", "g11", "g21", "g12", "g22"]
    ),

    SimulationKind.BLAZHKO: SimulationInfo(
        name="Blazhko amplitude modulation",
        description="Four-harmonic RR Lyrae carrier modulated in amplitude at f_m = 0.05 1/d",
        truth_columns=["mu", "m", "g11", "g21", "g12", "g22", "g13", "g23", "g14", "g24"]
    ),

    SimulationKind.AR2: SimulationInfo(
        name="Block-sampled AR(2)",
        description="Sunspot AR(2) path on an equally spaced grid, subsampled by random blocks",
        truth_columns=["full_time", "full_value"]
    ),

    SimulationKind.DEMO: SimulationInfo(
        name="Tuning demo",
        description="Slowly drifting single harmonic at 0.1 1/d on U(0,55) times, unit noise",
        truth_columns=["mu", "m", "g11", "g21"]
    ),
}


# (k*f0 [1/d], a_k [mag], phi_k [deg]) of the simulated RR Lyrae carrier
BLAZHKO_HARMONICS: List[Tuple[float, float, float]] = [
    (2.0, 0.401, 5.490),
    (4.0, 0.171, 144.040),
    (6.0, 0.133, 285.250),
    (8.0, 0.097, 81.290),
]

BLAZHKO_A0 = 0.01
BLAZHKO_AM = 0.1
BLAZHKO_FM = 0.05
BLAZHKO_PHI_M_DEG = 270.0
BLAZHKO_DEPTH = 1.2
BLAZHKO_SIGMA2 = 0.005
BLAZHKO_N = 1000
BLAZHKO_T_START = 0.03819
BLAZHKO_T_END = 69.37847
BLAZHKO_N_DESIGN = 28799

BLAZHKO_FIT_N_BASIS = 18
BLAZHKO_FIT_DEGREE = 3
BLAZHKO_FIT_PENALTY_ORDER = 1
BLAZHKO_FIT_TAUS = [5.0, 1.0, 0.1, 0.1, 0.1, 0.1, 1.0, 0.1, 4.0]

# sunspot-number AR(2)
AR2_PHI1 = 1.318
AR2_PHI2 = -0.634
AR2_SIGMA2 = 289.2
AR2_T0 = 0.67
AR2_DELTA = 0.33
AR2_N = 500
AR2_BURN_IN = 1000

SCENARIO_N = 500
SCENARIO_SIGMA2 = 2.0

DEMO_N = 500
DEMO_T_MAX = 55.0
DEMO_SIGMA2 = 1.0
DEMO_FREQUENCY = 0.1

REFLECTION_OFFSET = 30
