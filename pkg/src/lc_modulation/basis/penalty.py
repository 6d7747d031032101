from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..exceptions import OrderTooHigh


@dataclass(frozen=True)
class PenaltySpec:
    """Difference order and smoothing parameters of one fit.

    ``taus`` follow the objective's order: tau_1 for the trend, then
    tau_{2k} for the cosine amplitude and tau_{2k+1} for the sine amplitude of
    harmonic k.
    """
    order: int
    taus: Sequence[float]
    n_basis: int

    def __post_init__(self):
        object.__setattr__(self, "taus", tuple(float(tau) for tau in self.taus))
        self.validate()

    def validate(self) -> None:
        errors = []
        if self.order < 1:
            errors.append(f"order must be >= 1, got {self.order}")
        if len(self.taus) % 2 != 1:
            errors.append(f"expected an odd number of taus (2K+1), got {len(self.taus)}")
        if any(tau < 0 for tau in self.taus):
            errors.append("taus must be non-negative")
        if errors:
            raise ValueError(f"Invalid penalty: {', '.join(errors)}")
        if self.order >= self.n_basis:
            raise OrderTooHigh(f"penalty order r={self.order} must be smaller than J={self.n_basis}")

    @property
    def n_harmonics(self) -> int:
        return (len(self.taus) - 1) // 2

    def block_taus(self) -> List[float]:
        """Taus rearranged into design column order (trend, all cos, all sin)."""
        taus = self.taus
        return [taus[0]] + list(taus[1::2]) + list(taus[2::2])


def difference_matrix(r: int, J: int) -> np.ndarray:
    if r < 1:
        raise ValueError(f"difference order must be >= 1, got {r}")
    if r >= J:
        raise OrderTooHigh(f"difference order r={r} leaves no rows for J={J}")
    return np.diff(np.eye(J), n=r, axis=0)


def penalty_block(spec: PenaltySpec) -> np.ndarray:
    D = difference_matrix(spec.order, spec.n_basis)
    return np.kron(np.diag(spec.block_taus()), D.T @ D)


def penalty_value(spec: PenaltySpec, theta: np.ndarray) -> float:
    """Sum of tau-weighted squared coefficient differences, block by block."""
    D = difference_matrix(spec.order, spec.n_basis)
    blocks = np.asarray(theta, dtype=np.float64).reshape(-1, spec.n_basis)
    return float(sum(tau * np.sum((D @ block) ** 2) for tau, block in zip(spec.block_taus(), blocks)))
