from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .modulation import ArrayLike

# (amplitude, phase [rad]) of one term of a Fourier sum in the modulation frequency
Term = Tuple[float, float]


def _fourier_sum(terms: Sequence[Term], f_m: float, t: np.ndarray) -> np.ndarray:
    total = np.zeros_like(t)
    for j, (amplitude, phase) in enumerate(terms, start=1):
        total += amplitude * np.sin(2 * np.pi * j * f_m * t + phase)
    return total


@dataclass(frozen=True)
class BenkoParams:
    """Parametric Blazhko model with per-harmonic amplitude and phase modulation.

    mu*(t) = m0 + sum_r b_r sin(2 pi r f_m t + phi_r^b)
             + sum_k [a_k + g_k^A(t)] sin(2 pi k f0 t + phi_k + g_k^F(t))
    """
    f0: float
    f_m: float
    m0: float = 0.0
    trend_terms: Tuple[Term, ...] = ()
    harmonics: Tuple[Term, ...] = ()
    am_terms: Tuple[Tuple[Term, ...], ...] = ()
    fm_terms: Tuple[Tuple[Term, ...], ...] = ()

    def __post_init__(self):
        errors = []
        if self.f0 <= 0 or self.f_m <= 0:
            errors.append("f0 and f_m must be positive")
        K = len(self.harmonics)
        if self.am_terms and len(self.am_terms) != K:
            errors.append(f"am_terms has {len(self.am_terms)} series for {K} harmonics")
        if self.fm_terms and len(self.fm_terms) != K:
            errors.append(f"fm_terms has {len(self.fm_terms)} series for {K} harmonics")
        if errors:
            raise ValueError(f"Invalid Benko parameters: {', '.join(errors)}")

    @property
    def frequencies(self) -> List[float]:
        return [k * self.f0 for k in range(1, len(self.harmonics) + 1)]

    def g_am(self, k: int, t: np.ndarray) -> np.ndarray:
        return _fourier_sum(self.am_terms[k - 1], self.f_m, t) if self.am_terms else np.zeros_like(t)

    def g_fm(self, k: int, t: np.ndarray) -> np.ndarray:
        return _fourier_sum(self.fm_terms[k - 1], self.f_m, t) if self.fm_terms else np.zeros_like(t)


def benko_model_eval(p: BenkoParams, t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    signal = p.m0 + _fourier_sum(p.trend_terms, p.f_m, t)
    for k, (a_k, phi_k) in enumerate(p.harmonics, start=1):
        signal = signal + (a_k + p.g_am(k, t)) * np.sin(2 * np.pi * k * p.f0 * t + phi_k + p.g_fm(k, t))
    return signal


def benko_components(p: BenkoParams, t: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """Trend u(t) and amplitudes h of shape (2, K, N); h[0] multiplies cos, h[1] sin."""
    t = np.asarray(t, dtype=np.float64)
    u = p.m0 + _fourier_sum(p.trend_terms, p.f_m, t)
    h = np.empty((2, len(p.harmonics), len(t)))
    for k, (a_k, phi_k) in enumerate(p.harmonics, start=1):
        envelope = a_k + p.g_am(k, t)
        phase = phi_k + p.g_fm(k, t)
        h[0, k - 1] = envelope * np.sin(phase)
        h[1, k - 1] = envelope * np.cos(phase)
    return u, h


@dataclass(frozen=True)
class Benko2011Params:
    """Earlier variant with one shared modulation pair (g^A, g^F) for all harmonics.

    mu*(t) = aA0 a0 + a0 g^A(t) + sum_k [aA0 a_k + a_k g^A(t)] sin(2 pi k f0 t + phi_k + k g^F(t))
    """
    f0: float
    f_m: float
    a0: float = 0.0
    am_offset: float = 1.0
    harmonics: Tuple[Term, ...] = ()
    am_terms: Tuple[Term, ...] = ()
    fm_terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        if self.f0 <= 0 or self.f_m <= 0:
            raise ValueError("Invalid Benko parameters: f0 and f_m must be positive")

    @property
    def frequencies(self) -> List[float]:
        return [k * self.f0 for k in range(1, len(self.harmonics) + 1)]


def benko2011_eval(p: Benko2011Params, t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    g_a = _fourier_sum(p.am_terms, p.f_m, t)
    g_f = _fourier_sum(p.fm_terms, p.f_m, t)
    signal = p.am_offset * p.a0 + p.a0 * g_a
    for k, (a_k, phi_k) in enumerate(p.harmonics, start=1):
        signal = signal + (p.am_offset * a_k + a_k * g_a) * np.sin(2 * np.pi * k * p.f0 * t + phi_k + k * g_f)
    return signal


def benko2011_components(p: Benko2011Params, t: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """Trend v(t) and amplitudes w of shape (2, K, N)."""
    t = np.asarray(t, dtype=np.float64)
    g_a = _fourier_sum(p.am_terms, p.f_m, t)
    g_f = _fourier_sum(p.fm_terms, p.f_m, t)
    v = p.am_offset * p.a0 + p.a0 * g_a
    w = np.empty((2, len(p.harmonics), len(t)))
    for k, (a_k, phi_k) in enumerate(p.harmonics, start=1):
        envelope = p.am_offset * a_k + a_k * g_a
        w[0, k - 1] = envelope * np.sin(phi_k + k * g_f)
        w[1, k - 1] = envelope * np.cos(phi_k + k * g_f)
    return v, w
