from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import ModelConfig
from ..constants import ComponentKind, REFLECTION_OFFSET
from ..exceptions import EmptyBasis, NonPositiveResult, ShapeMismatch
from .bspline import SplineBasis, basis_matrix, build_knots


logger = logging.getLogger("lc_modulation.design")


@dataclass(frozen=True)
class ColumnInfo:
    kind: ComponentKind
    harmonic: int  # 1-based, 0 for the trend
    basis_index: int  # 1-based
    extra: bool = False


@dataclass(frozen=True)
class DesignMatrix:
    """Columns are [B | C_1 B .. C_K B | S_1 B .. S_K B], extra frequencies after the ordinary ones."""
    matrix: np.ndarray
    column_map: Tuple[ColumnInfo, ...]
    basis: SplineBasis
    spec: ModelConfig

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_columns(self) -> int:
        return self.matrix.shape[1]

    @property
    def n_basis(self) -> int:
        return self.basis.n_basis

    @property
    def n_harmonics(self) -> int:
        return self.spec.n_harmonics

    def block_slice(self, kind: ComponentKind, harmonic: int = 0) -> slice:
        J, K = self.n_basis, self.n_harmonics
        if kind is ComponentKind.TREND:
            start = 0
        elif kind is ComponentKind.COS:
            start = J * harmonic
        else:
            start = J * (K + harmonic)
        return slice(start, start + J)


def _column_map(spec: ModelConfig, n_basis: int) -> Tuple[ColumnInfo, ...]:
    n_ordinary = len(spec.frequencies)
    columns: List[ColumnInfo] = [ColumnInfo(ComponentKind.TREND, 0, j) for j in range(1, n_basis + 1)]
    for kind in (ComponentKind.COS, ComponentKind.SIN):
        for k in range(1, spec.n_harmonics + 1):
            columns.extend(
                ColumnInfo(kind, k, j, extra=k > n_ordinary) for j in range(1, n_basis + 1)
            )
    return tuple(columns)


def build_design(basis: SplineBasis, spec: ModelConfig,
                 times: Optional[Sequence[float]] = None) -> DesignMatrix:
    B = basis.matrix
    if B.size == 0 or B.shape[1] == 0:
        raise EmptyBasis("spline basis has no columns")
    if B.shape[1] != spec.basis.n_basis:
        raise ShapeMismatch(
            f"basis has {B.shape[1]} columns but the model expects J={spec.basis.n_basis}"
        )

    times = basis.times if times is None else np.asarray(times, dtype=np.float64)
    if len(times) != B.shape[0]:
        raise ShapeMismatch(f"basis evaluated at {B.shape[0]} times, design asked for {len(times)}")

    omega = 2.0 * np.pi * np.asarray(spec.all_frequencies, dtype=np.float64)
    phase = np.outer(times, omega)
    cos_blocks = [B * np.cos(phase[:, k])[:, None] for k in range(len(omega))]
    sin_blocks = [B * np.sin(phase[:, k])[:, None] for k in range(len(omega))]
    matrix = np.hstack([B, *cos_blocks, *sin_blocks])
    matrix.flags.writeable = False

    logger.debug(f"Built {matrix.shape[0]}x{matrix.shape[1]} design with {len(omega)} harmonics")
    return DesignMatrix(matrix=matrix, column_map=_column_map(spec, B.shape[1]),
                        basis=basis, spec=spec)


def reflection_frequencies(f0: float, f_nyquist: float, j_range: Sequence[int],
                           offset: int = REFLECTION_OFFSET) -> List[float]:
    if f0 <= 0 or f_nyquist <= 0:
        raise ValueError("f0 and the Nyquist frequency must be positive")
    frequencies = []
    for j in j_range:
        value = 2.0 * f_nyquist - (offset - j) * f0
        if value <= 0:
            raise NonPositiveResult(f"reflection frequency for j={j} is {value}")
        frequencies.append(value)
    return frequencies


def design_for_times(times: Sequence[float], spec: ModelConfig) -> DesignMatrix:
    """Knots spanning [min(times), max(times)], basis and design in one step."""
    times = np.asarray(times, dtype=np.float64)
    if len(times) == 0:
        raise EmptyBasis("no evaluation times")
    kv = build_knots(float(times.min()), float(times.max()), spec.basis.n_intervals, spec.basis.degree)
    return build_design(basis_matrix(kv, times), spec, times)
