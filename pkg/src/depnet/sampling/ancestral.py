# /src/depnet/sampling/ancestral.py
# Ancestral sampling of a Bayesian network in lowest-id topological order

import logging

import numpy as np

from .rng import cumulative, inverse_cdf, seed_streams
from ..core.dataset import Dataset
from ..errors import UndefinedRowError
from ..models.bayesnet import BayesianNetwork

logger = logging.getLogger(__name__)


def ancestral_sample(bn: BayesianNetwork, N: int, seed: int = 0) -> Dataset:
    """N i.i.d. joint samples, firing every node once per sample in topological order.

    All N samples advance together one node at a time; each node consumes
    N uniforms of the value stream.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative; got {N}")
    order = bn.order()
    rng = seed_streams(seed)["values"]
    rows = np.zeros((N, bn.n), dtype=np.int64)
    for j in order:
        cpt = bn.cpts[j]
        index = np.zeros(N, dtype=np.int64)
        for var, card in zip(cpt.inputs, cpt.input_cards):
            index = index * card + rows[:, var]
        cdf = cumulative(cpt.table)[index]
        undefined = np.isnan(cdf[:, 0])
        if undefined.any():
            raise UndefinedRowError(j, cpt.input_values(int(index[np.argmax(undefined)])))
        rows[:, j] = inverse_cdf(cdf, rng.random(N))
    logger.debug(f"Drew {N} ancestral samples in order {order}")
    return Dataset(bn.space, rows)
