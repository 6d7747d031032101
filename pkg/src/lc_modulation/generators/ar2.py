from dataclasses import dataclass
import logging
from typing import Optional, Sequence, Union

import numpy as np
from scipy.signal import lfilter

from ..constants import AR2_BURN_IN, AR2_N, AR2_T0
from ..exceptions import BadPartition
from ..framework.timeseries import TimeSeries
from ..spectral.ar2 import Ar2Params


logger = logging.getLogger("lc_modulation.ar2")


def simulate_ar2(p: Ar2Params, n: int, seed: Union[int, np.random.Generator, None] = None,
                 burn_in: int = AR2_BURN_IN) -> np.ndarray:
    """eps_i = phi1 eps_{i-1} + phi2 eps_{i-2} + z_i started from zero; the first ``burn_in`` draws are dropped."""
    p.check()
    if n < 1 or burn_in < 0:
        raise ValueError(f"need n >= 1 and burn_in >= 0, got n={n}, burn_in={burn_in}")
    rng = np.random.default_rng(seed)
    z = rng.normal(0.0, np.sqrt(p.sigma2), size=n + burn_in)
    path = lfilter([1.0], [1.0, -p.phi1, -p.phi2], z)
    return path[burn_in:]


@dataclass
class BlockSample:
    """Full equally spaced path and its block subsample; ``blocks`` are 0-based and sorted."""
    full: TimeSeries
    sample: TimeSeries
    blocks: np.ndarray
    block_len: int

    @property
    def indices(self) -> np.ndarray:
        """1-based grid indices of the retained observations."""
        return (self.blocks[:, None] * self.block_len + np.arange(1, self.block_len + 1)).reshape(-1)


def choose_blocks(n_blocks: int, keep: int, seed: Union[int, np.random.Generator, None] = None) -> np.ndarray:
    if not 1 <= keep <= n_blocks:
        raise BadPartition(f"cannot keep {keep} of {n_blocks} blocks")
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(n_blocks, size=keep, replace=False))


def gen_ar2_blocks(p: Optional[Ar2Params] = None, N: int = AR2_N, n_blocks: int = 50,
                   block_len: int = 10, keep: int = 30,
                   seed: Union[int, np.random.Generator, None] = None,
                   blocks: Optional[Sequence[int]] = None, t0: float = AR2_T0,
                   burn_in: int = AR2_BURN_IN) -> BlockSample:
    """AR(2) path at t_i = t0 + i * delta, i = 1..N, thinned to ``keep`` random blocks.

    Passing ``blocks`` fixes the retained blocks, so replicates can share one sampling pattern.
    """
    p = p or Ar2Params()
    if n_blocks < 1 or block_len < 1 or n_blocks * block_len != N:
        raise BadPartition(f"{n_blocks} blocks of {block_len} do not partition N={N}")

    rng = np.random.default_rng(seed)
    if blocks is None:
        blocks = choose_blocks(n_blocks, keep, rng)
    else:
        blocks = np.sort(np.asarray(blocks, dtype=np.int64))
        if len(blocks) != keep or len(np.unique(blocks)) != keep:
            raise BadPartition(f"expected {keep} distinct blocks, got {blocks.tolist()}")
        if blocks[0] < 0 or blocks[-1] >= n_blocks:
            raise BadPartition(f"block numbers must lie in 0..{n_blocks - 1}")

    path = simulate_ar2(p, N, rng, burn_in)
    times = t0 + np.arange(1, N + 1) * p.delta
    full = TimeSeries.from_arrays(times, path, t0=t0, delta=p.delta)

    keep_mask = np.zeros((n_blocks, block_len), dtype=bool)
    keep_mask[blocks] = True
    keep_mask = keep_mask.reshape(-1)
    sample = TimeSeries.from_arrays(times[keep_mask], path[keep_mask], t0=t0, delta=p.delta)

    logger.debug(f"AR(2) block sample: kept {len(blocks)}/{n_blocks} blocks, n={len(sample)}")
    return BlockSample(full=full, sample=sample, blocks=blocks, block_len=block_len)
