from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

ArrayLike = Union[float, Sequence[float], np.ndarray]

# (frequency [1/d], amplitude [mag], phase [rad])
Harmonic = Tuple[float, float, float]


@dataclass(frozen=True)
class CarrierParams:
    amplitude: float
    frequency: float
    phase: float = 0.0

    def __post_init__(self):
        if self.frequency <= 0:
            raise ValueError(f"carrier frequency must be positive, got {self.frequency}")


@dataclass(frozen=True)
class ModulationParams:
    frequency: float
    am_amplitude: float = 0.0
    fm_amplitude: float = 0.0
    fm_deviation: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if self.frequency <= 0:
            raise ValueError(f"modulation frequency must be positive, got {self.frequency}")


def _arg(frequency: float, t: np.ndarray, phase: float) -> np.ndarray:
    return 2 * np.pi * frequency * t + phase


def gen_am(carrier: CarrierParams, mod: ModulationParams, t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    envelope = carrier.amplitude + mod.am_amplitude * np.sin(_arg(mod.frequency, t, mod.phase))
    return envelope * np.sin(_arg(carrier.frequency, t, carrier.phase))


def am_sidebands(carrier: CarrierParams, mod: ModulationParams, t: ArrayLike) -> np.ndarray:
    """The AM signal as carrier plus the two sidebands at f_c - f_m and f_c + f_m."""
    t = np.asarray(t, dtype=np.float64)
    half = mod.am_amplitude / 2
    return (carrier.amplitude * np.sin(_arg(carrier.frequency, t, carrier.phase))
            + half * np.cos(_arg(carrier.frequency - mod.frequency, t, carrier.phase - mod.phase))
            - half * np.cos(_arg(carrier.frequency + mod.frequency, t, carrier.phase + mod.phase)))


def _fm_phase(mod: ModulationParams, t: np.ndarray) -> np.ndarray:
    return mod.fm_deviation * mod.fm_amplitude / mod.frequency * np.sin(_arg(mod.frequency, t, mod.phase))


def gen_fm(carrier: CarrierParams, mod: ModulationParams, t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    return carrier.amplitude * np.sin(_arg(carrier.frequency, t, carrier.phase) + _fm_phase(mod, t))


def gen_comb(carrier: CarrierParams, mod: ModulationParams, t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    envelope = carrier.amplitude + mod.am_amplitude * np.sin(_arg(mod.frequency, t, mod.phase))
    return envelope * np.sin(_arg(carrier.frequency, t, carrier.phase) + _fm_phase(mod, t))


def harmonic_carrier(a0: float, harmonics: Sequence[Harmonic], t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    signal = np.full(t.shape, a0, dtype=np.float64)
    for frequency, amplitude, phase in harmonics:
        signal += amplitude * np.sin(_arg(frequency, t, phase))
    return signal


def gen_am_harmonic(a0: float, harmonics: Sequence[Harmonic], depth: float,
                    mod_frequency: float, mod_phase: float, t: ArrayLike) -> np.ndarray:
    """[1 + depth * sin(2 pi f_m t + phi_m)] * c(t) for a multi-harmonic carrier c."""
    t = np.asarray(t, dtype=np.float64)
    factor = 1 + depth * np.sin(_arg(mod_frequency, t, mod_phase))
    return factor * harmonic_carrier(a0, harmonics, t)


def am_harmonic_sidebands(a0: float, harmonics: Sequence[Harmonic], depth: float,
                          mod_frequency: float, mod_phase: float, t: ArrayLike) -> np.ndarray:
    """Time-invariant expansion of gen_am_harmonic: carrier, modulated offset and 2K sidebands."""
    t = np.asarray(t, dtype=np.float64)
    signal = harmonic_carrier(a0, harmonics, t) + a0 * depth * np.sin(_arg(mod_frequency, t, mod_phase))
    for frequency, amplitude, phase in harmonics:
        half = amplitude * depth / 2
        signal += half * np.sin(_arg(frequency - mod_frequency, t, phase - mod_phase) + np.pi / 2)
        signal -= half * np.sin(_arg(frequency + mod_frequency, t, phase + mod_phase) + np.pi / 2)
    return signal


def harmonic_signal(trend: np.ndarray, amplitudes: np.ndarray, frequencies: Sequence[float],
                    t: ArrayLike) -> np.ndarray:
    """m(t) + sum_k g_1k(t) cos(w_k t) + g_2k(t) sin(w_k t); ``amplitudes`` has shape (2, K, N)."""
    t = np.asarray(t, dtype=np.float64)
    signal = np.array(trend, dtype=np.float64)
    for k, frequency in enumerate(frequencies):
        w = 2 * np.pi * frequency
        signal += amplitudes[0, k] * np.cos(w * t) + amplitudes[1, k] * np.sin(w * t)
    return signal
