from dataclasses import dataclass
import logging
from typing import Sequence

import numpy as np
from scipy.interpolate import BSpline

from ..exceptions import DegenerateDomain, OutOfDomain


logger = logging.getLogger("lc_modulation.bspline")


@dataclass(frozen=True)
class KnotVector:
    """Equally spaced knots xi_0..xi_{n+2d}; the fitting domain is [xi_d, xi_{n+d}].

    Basis functions are numbered 1..J while knots start at 0, so B_j lives on
    [xi_{j-1}, xi_{j+d}]. In array terms column ``j - 1`` uses ``knots[j - 1 : j + d + 1]``.
    """
    knots: np.ndarray
    degree: int
    n_intervals: int

    def __post_init__(self):
        knots = np.array(self.knots, dtype=np.float64)
        knots.flags.writeable = False
        object.__setattr__(self, "knots", knots)

    @property
    def n_basis(self) -> int:
        return self.n_intervals + self.degree

    @property
    def domain(self) -> tuple:
        return float(self.knots[self.degree]), float(self.knots[self.n_intervals + self.degree])


@dataclass(frozen=True)
class SplineBasis:
    knotvec: KnotVector
    matrix: np.ndarray
    times: np.ndarray

    @property
    def n_basis(self) -> int:
        return self.knotvec.n_basis

    def at(self, times: Sequence[float]) -> "SplineBasis":
        return basis_matrix(self.knotvec, times)


def build_knots(t_min: float, t_max: float, n: int, d: int) -> KnotVector:
    if not t_max > t_min:
        raise DegenerateDomain(f"knot domain needs t_max > t_min, got [{t_min}, {t_max}]")
    if n < 1:
        raise ValueError(f"number of intervals must be >= 1, got {n}")
    if d < 0:
        raise ValueError(f"degree must be >= 0, got {d}")

    spacing = (t_max - t_min) / n
    interior = np.linspace(t_min, t_max, n + 1)
    left = t_min - spacing * np.arange(d, 0, -1)
    right = t_max + spacing * np.arange(1, d + 1)
    return KnotVector(np.concatenate([left, interior, right]), degree=d, n_intervals=n)


def _check_domain(kv: KnotVector, times: np.ndarray) -> None:
    lo, hi = kv.domain
    outside = np.flatnonzero((times < lo) | (times > hi))
    if outside.size:
        raise OutOfDomain(
            f"{outside.size} time(s) outside the spline domain [{lo}, {hi}]",
            indices=outside.tolist(),
        )


def _cox_de_boor(knots: np.ndarray, j: int, d: int, t: float, right: float) -> float:
    if d == 0:
        lo, hi = knots[j - 1], knots[j]
        if t == right:
            # the right edge belongs to the last cell of the domain only
            return 1.0 if hi == right and lo < hi else 0.0
        return 1.0 if lo <= t < hi else 0.0

    value = 0.0
    den = knots[j + d - 1] - knots[j - 1]
    if den > 0:
        value += (t - knots[j - 1]) / den * _cox_de_boor(knots, j, d - 1, t, right)
    den = knots[j + d] - knots[j]
    if den > 0:
        value += (knots[j + d] - t) / den * _cox_de_boor(knots, j + 1, d - 1, t, right)
    return value


def eval_basis(kv: KnotVector, j: int, t: float) -> float:
    if not 1 <= j <= kv.n_basis:
        raise ValueError(f"basis index must lie in 1..{kv.n_basis}, got {j}")
    _check_domain(kv, np.array([t], dtype=np.float64))
    return _cox_de_boor(kv.knots, j, kv.degree, float(t), kv.domain[1])


def basis_matrix(kv: KnotVector, times: Sequence[float]) -> SplineBasis:
    times = np.array(times, dtype=np.float64).reshape(-1)
    _check_domain(kv, times)

    matrix = BSpline.design_matrix(times, kv.knots, kv.degree).toarray()
    matrix.flags.writeable = False
    times.flags.writeable = False

    logger.debug(f"Evaluated {kv.n_basis} B-splines of degree {kv.degree} at {len(times)} times")
    return SplineBasis(knotvec=kv, matrix=matrix, times=times)
