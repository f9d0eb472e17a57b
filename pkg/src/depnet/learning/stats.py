# /src/depnet/learning/stats.py
# Sufficient statistics N_{x_i y_i}, N_{y_i}, N of one node and candidate inputs

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.special import xlogy

from ..core.dataset import DENSE_COUNT_LIMIT, Dataset
from ..errors import EmptyDatasetError


@dataclass(frozen=True, eq=False)
class SuffStats:
    """Dense counts of (y_i, x_i) for node i with inputs Y_i."""
    node: int
    inputs: Tuple[int, ...]
    n_xy: np.ndarray

    @classmethod
    def from_dataset(cls, d: Dataset, node: int, inputs: Sequence[int]) -> "SuffStats":
        inputs = tuple(inputs)
        index, states = d.joint_index(inputs)
        card = d.space.cards[node]
        if states * card > DENSE_COUNT_LIMIT:
            raise ValueError(f"node {node}: {states} input states are too many for a dense CPT")
        joint = index * card + d.column(node)
        counts = np.bincount(joint, minlength=states * card).reshape(states, card)
        return cls(node=node, inputs=inputs, n_xy=counts)

    @property
    def n_y(self) -> np.ndarray:
        return self.n_xy.sum(axis=1)

    @property
    def N(self) -> int:
        return int(self.n_xy.sum())


def empirical_conditional_entropy(d: Dataset, node: int, inputs: Sequence[int]) -> float:
    """H_{p̃}(X_i|Y_i) = −Σ (N_{x y}/N) ln(N_{x y}/N_y), zero counts contributing nothing."""
    if d.N == 0:
        raise EmptyDatasetError()
    index, states = d.joint_index(tuple(inputs))
    card = d.space.cards[node]
    joint = index * card + d.column(node)
    if states * card <= DENSE_COUNT_LIMIT:
        n_xy = np.bincount(joint, minlength=states * card)
        n_y = n_xy.reshape(states, card).sum(axis=1)
    else:
        n_xy = np.unique(joint, return_counts=True)[1]
        n_y = np.unique(index, return_counts=True)[1]
    n_xy = n_xy.astype(np.float64)
    n_y = n_y.astype(np.float64)
    value = (xlogy(n_y, n_y).sum() - xlogy(n_xy, n_xy).sum()) / d.N
    return max(float(value), 0.0)
