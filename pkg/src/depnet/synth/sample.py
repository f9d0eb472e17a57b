# /src/depnet/synth/sample.py
# i.i.d. datasets drawn from an exact joint table

import numpy as np

from ..core.dataset import Dataset
from ..core.joint import JointTable
from ..sampling.rng import cumulative, seed_streams


def sample_joint(p: JointTable, N: int, seed: int = 0) -> Dataset:
    """N i.i.d. rows by inverse CDF over the joint index.

    Draws are consumed in row order, so sample_joint(p, M, s).head(N)
    equals sample_joint(p, N, s) for N ≤ M.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative; got {N}")
    cdf = cumulative(p.probs)
    u = seed_streams(seed)["values"].random(N)
    index = np.minimum(np.searchsorted(cdf, u, side="right"), p.space.total_states - 1)
    rows = np.stack(np.unravel_index(index, p.space.cards), axis=1) if N else np.zeros((0, p.space.n))
    return Dataset(p.space, rows)
