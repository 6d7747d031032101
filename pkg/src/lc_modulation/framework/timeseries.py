from dataclasses import dataclass, field
import logging
from typing import Optional, Sequence

import numpy as np

from ..config import get_config
from ..exceptions import (
    DegenerateSpan,
    EmptySeries,
    GridMismatch,
    IndexCollision,
    LengthMismatch,
    NonMonotoneTimes,
)


logger = logging.getLogger("lc_modulation.timeseries")


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Observation instants (days) and measured values (magnitudes).

    ``t0`` and ``delta`` are set when the series is known to sit on an
    equally spaced design ``t0 + k * delta`` with positive integer ``k``.
    """
    times: np.ndarray
    values: np.ndarray
    t0: Optional[float] = None
    delta: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "times", _frozen(self.times))
        object.__setattr__(self, "values", _frozen(self.values))

    @classmethod
    def from_arrays(cls, times: Sequence[float], values: Sequence[float],
                    t0: Optional[float] = None, delta: Optional[float] = None) -> "TimeSeries":
        return validate(cls(times=times, values=values, t0=t0, delta=delta))

    def __len__(self) -> int:
        return len(self.times)

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])

    def with_values(self, values: Sequence[float]) -> "TimeSeries":
        return validate(TimeSeries(self.times, values, self.t0, self.delta))


@dataclass(frozen=True)
class GridEmbedding:
    indices: np.ndarray
    n_grid: int
    t0: float
    delta: float
    offsets: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64).reshape(-1)
        idx.flags.writeable = False
        object.__setattr__(self, "indices", idx)
        if self.offsets is not None:
            object.__setattr__(self, "offsets", _frozen(self.offsets))

    def times(self) -> np.ndarray:
        return self.t0 + self.indices * self.delta

    def fill_ratio(self) -> float:
        return len(self.indices) / self.n_grid


def validate(ts: TimeSeries, grid_tol: Optional[float] = None) -> TimeSeries:
    if len(ts.times) != len(ts.values):
        raise LengthMismatch(
            f"times has {len(ts.times)} entries but values has {len(ts.values)}"
        )
    if len(ts.times) == 0:
        raise EmptySeries("time series has no observations")
    if not np.all(np.isfinite(ts.times)) or not np.all(np.isfinite(ts.values)):
        raise ValueError("times and values must be finite")

    steps = np.diff(ts.times)
    if np.any(steps <= 0):
        bad = int(np.flatnonzero(steps <= 0)[0])
        raise NonMonotoneTimes(
            f"times must be strictly increasing; t[{bad}]={ts.times[bad]!r} "
            f"is followed by t[{bad + 1}]={ts.times[bad + 1]!r}"
        )

    if (ts.t0 is None) != (ts.delta is None):
        raise ValueError("t0 and delta must be given together")
    if ts.t0 is not None:
        embed_on_grid(ts, ts.t0, ts.delta, grid_tol)

    return ts


def embed_on_grid(ts: TimeSeries, t0: float, delta: float,
                  grid_tol: Optional[float] = None,
                  n_grid: Optional[int] = None) -> GridEmbedding:
    """Map each instant to the integer index k with t = t0 + k * delta.

    ``n_grid`` defaults to the largest index; a larger value extends the
    Fourier grid to a known design length.
    """
    if delta <= 0:
        raise ValueError(f"grid spacing must be positive, got {delta}")
    if grid_tol is None:
        grid_tol = delta * get_config().grid_tol_factor
    if grid_tol < 0:
        raise ValueError(f"grid tolerance must be non-negative, got {grid_tol}")

    position = (ts.times - t0) / delta
    indices = np.rint(position).astype(np.int64)
    offsets = ts.times - (t0 + indices * delta)

    off_grid = np.flatnonzero(np.abs(offsets) > grid_tol)
    if off_grid.size:
        i = int(off_grid[0])
        raise GridMismatch(
            f"{off_grid.size} observation(s) off the grid t0={t0}, delta={delta}; "
            f"first is t[{i}]={ts.times[i]!r} with offset {offsets[i]:.3e} > {grid_tol:.3e}"
        )

    if indices[0] < 1:
        raise GridMismatch(
            f"grid indices must be positive; t[0]={ts.times[0]!r} maps to index {indices[0]}"
        )

    collisions = np.flatnonzero(np.diff(indices) <= 0)
    if collisions.size:
        i = int(collisions[0])
        raise IndexCollision(
            f"t[{i}] and t[{i + 1}] both map to grid index {indices[i]}"
        )

    max_index = int(indices[-1])
    if n_grid is None:
        n_grid = max_index
    elif n_grid < max_index:
        raise ValueError(f"n_grid={n_grid} is smaller than the largest index {max_index}")

    logger.debug(f"Embedded {len(indices)} observations on a grid of {n_grid} points")
    return GridEmbedding(indices=indices, n_grid=int(n_grid), t0=float(t0),
                         delta=float(delta), offsets=offsets)


def rescale_time(ts: TimeSeries) -> np.ndarray:
    if len(ts.times) < 2:
        raise DegenerateSpan("rescaling needs at least two observations")
    span = ts.times[-1] - ts.times[0]
    if span <= 0:
        raise DegenerateSpan("first and last instants coincide")
    u = (ts.times - ts.times[0]) / span
    u[-1] = 1.0
    return u
