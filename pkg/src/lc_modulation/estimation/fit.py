from dataclasses import dataclass, field
import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, ldl

from ..basis.bspline import SplineBasis
from ..basis.design import DesignMatrix, design_for_times
from ..basis.penalty import penalty_block
from ..config import ModelConfig, get_config
from ..constants import ComponentKind
from ..exceptions import DegenerateDof, ShapeMismatch, SingularSystem


logger = logging.getLogger("lc_modulation.fit")


class PenalizedSystem:
    """Cholesky factorization of B'B + P shared by the fit, the trace and the covariance."""

    def __init__(self, design: DesignMatrix, P: np.ndarray, jitter: Optional[float] = None):
        B = design.matrix
        P = np.asarray(P, dtype=np.float64)
        c = B.shape[1]
        if P.shape != (c, c):
            raise ShapeMismatch(f"penalty is {P.shape}, design has {c} columns")
        if B.shape[0] < c and not np.any(P):
            raise SingularSystem(
                f"{B.shape[0]} observations cannot identify {c} unpenalized coefficients"
            )

        self.gram = B.T @ B
        self.system = self.gram + P
        self.jitter = get_config().jitter if jitter is None else jitter
        self.factor = self._factorize()

    def _factorize(self):
        try:
            return cho_factor(self.system, lower=True)
        except LinAlgError:
            pass

        bump = self.jitter * float(np.mean(np.diag(self.system)))
        logger.warning(f"Cholesky factorization failed, retrying with diagonal jitter {bump:.3e}")
        try:
            return cho_factor(self.system + bump * np.eye(len(self.system)), lower=True)
        except LinAlgError:
            _, d, _ = ldl(self.system)
            pivot = float(np.min(np.diag(d)))
            raise SingularSystem(
                f"B'B + P is not positive definite (smallest pivot {pivot:.3e})",
                smallest_pivot=pivot,
            )

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve(self.factor, rhs)

    def inverse(self) -> np.ndarray:
        return self.solve(np.eye(len(self.system)))

    def hat_trace(self) -> float:
        return float(np.trace(self.solve(self.gram)))


@dataclass
class Coefficients:
    theta: np.ndarray
    n_basis: int
    n_harmonics: int

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=np.float64)
        expected = self.n_basis * (2 * self.n_harmonics + 1)
        if self.theta.shape != (expected,):
            raise ShapeMismatch(f"expected {expected} coefficients, got {self.theta.shape}")

    def block(self, kind: ComponentKind, harmonic: int = 0) -> np.ndarray:
        J, K = self.n_basis, self.n_harmonics
        if kind is ComponentKind.TREND:
            return self.theta[:J]
        if not 1 <= harmonic <= K:
            raise ShapeMismatch(f"harmonic {harmonic} outside 1..{K}")
        offset = harmonic if kind is ComponentKind.COS else K + harmonic
        return self.theta[J * offset:J * (offset + 1)]

    @property
    def alpha(self) -> np.ndarray:
        return self.block(ComponentKind.TREND)

    def beta(self, k: int) -> np.ndarray:
        return self.block(ComponentKind.COS, k)

    def gamma(self, k: int) -> np.ndarray:
        return self.block(ComponentKind.SIN, k)


@dataclass
class Components:
    times: np.ndarray
    trend: np.ndarray
    amplitudes: np.ndarray  # (2, K, N): [0] multiplies cos, [1] multiplies sin

    def amplitude(self, ell: int, k: int) -> np.ndarray:
        return self.amplitudes[ell - 1, k - 1]

    def reassemble(self, frequencies: Sequence[float]) -> np.ndarray:
        phase = np.outer(2.0 * np.pi * np.asarray(frequencies, dtype=np.float64), self.times)
        return self.trend + np.sum(self.amplitudes[0] * np.cos(phase) + self.amplitudes[1] * np.sin(phase), axis=0)


@dataclass
class FitResult:
    coefficients: Coefficients
    fitted: np.ndarray
    residuals: np.ndarray
    edf: float
    sigma2: float
    mse: float
    components: Components
    spec: ModelConfig = field(repr=False, default=None)

    @property
    def n_obs(self) -> int:
        return len(self.fitted)

    @property
    def trend(self) -> np.ndarray:
        return self.components.trend

    @property
    def amplitudes(self) -> np.ndarray:
        return self.components.amplitudes

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_obs": self.n_obs,
            "n_coefficients": len(self.coefficients.theta),
            "mse": self.mse,
            "sigma2": self.sigma2,
            "edf": self.edf,
        }


def hat_trace(design: DesignMatrix, P: np.ndarray) -> float:
    return PenalizedSystem(design, P).hat_trace()


def error_variance(y: Sequence[float], fitted: Sequence[float], edf: float) -> float:
    y = np.asarray(y, dtype=np.float64)
    fitted = np.asarray(fitted, dtype=np.float64)
    if y.shape != fitted.shape:
        raise ShapeMismatch(f"y has shape {y.shape}, fitted has {fitted.shape}")
    dof = len(y) - edf
    if dof <= 0:
        raise DegenerateDof(f"no residual degrees of freedom: N={len(y)}, edf={edf:.6g}")
    return float(np.sum((y - fitted) ** 2) / dof)


def extract_components(coeffs: Coefficients, basis: SplineBasis, spec: ModelConfig) -> Components:
    if coeffs.n_basis != basis.n_basis or coeffs.n_harmonics != spec.n_harmonics:
        raise ShapeMismatch(
            f"coefficients are partitioned as J={coeffs.n_basis}, K={coeffs.n_harmonics}; "
            f"basis/model give J={basis.n_basis}, K={spec.n_harmonics}"
        )
    B = basis.matrix
    K = spec.n_harmonics
    amplitudes = np.empty((2, K, B.shape[0]))
    for k in range(1, K + 1):
        amplitudes[0, k - 1] = B @ coeffs.beta(k)
        amplitudes[1, k - 1] = B @ coeffs.gamma(k)
    return Components(times=np.asarray(basis.times), trend=B @ coeffs.alpha, amplitudes=amplitudes)


def fit_pols(design: DesignMatrix, y: Sequence[float], P: np.ndarray) -> FitResult:
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (design.n_rows,):
        raise ShapeMismatch(f"design has {design.n_rows} rows, y has shape {y.shape}")

    system = PenalizedSystem(design, P)
    theta = system.solve(design.matrix.T @ y)
    fitted = design.matrix @ theta
    residuals = y - fitted
    edf = system.hat_trace()

    try:
        sigma2 = error_variance(y, fitted, edf)
    except DegenerateDof:
        logger.warning(f"edf={edf:.6g} leaves no residual degrees of freedom for N={len(y)}")
        sigma2 = float("nan")

    coeffs = Coefficients(theta, design.n_basis, design.n_harmonics)
    components = extract_components(coeffs, design.basis, design.spec)
    mse = float(np.mean(residuals ** 2))

    logger.debug(f"POLS fit: N={len(y)}, c={design.n_columns}, edf={edf:.4f}, mse={mse:.6g}")
    return FitResult(coefficients=coeffs, fitted=fitted, residuals=residuals, edf=edf,
                     sigma2=sigma2, mse=mse, components=components, spec=design.spec)


def fit_series(times: Sequence[float], values: Sequence[float], spec: ModelConfig):
    """Build knots, design and penalty for ``spec`` on ``times`` and fit ``values``.

    Returns ``(fit, design, P)``.
    """
    design = design_for_times(times, spec)
    P = penalty_block(spec.penalty_spec())
    return fit_pols(design, values, P), design, P
