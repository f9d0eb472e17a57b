# /src/depnet/core/dataset.py
# Dataset - rows of complete assignments and counting over them

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .joint import JointTable
from .space import VarSpace
from ..errors import EmptyDatasetError, SpaceError

# Dense counts are refused above this many joint states.
DENSE_COUNT_LIMIT = 2 ** 22


@dataclass(frozen=True, eq=False)
class Dataset:
    """Training or output data d^N: an (N, n) array of assignments."""
    space: VarSpace
    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.int64)
        if rows.size == 0:
            rows = rows.reshape(0, self.space.n)
        if rows.ndim != 2 or rows.shape[1] != self.space.n:
            raise SpaceError(f"rows must have shape (N, {self.space.n}); got {rows.shape}")
        cards = np.asarray(self.space.cards)
        if np.any(rows < 0) or np.any(rows >= cards):
            bad = int(np.argwhere((rows < 0) | (rows >= cards))[0][0])
            raise SpaceError(f"row {bad} is out of range for the space")
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    @property
    def N(self) -> int:
        return int(self.rows.shape[0])

    def __len__(self) -> int:
        return self.N

    def column(self, i: int) -> np.ndarray:
        return self.rows[:, i]

    def head(self, count: int) -> "Dataset":
        """First ``count`` rows (nested training sets d^N)."""
        return Dataset(self.space, self.rows[:count])

    # ========== Counting ==========

    def joint_index(self, ids: Sequence[int]) -> Tuple[np.ndarray, int]:
        """Per-row mixed-radix index over ``ids`` (given order) and its state count."""
        index = np.zeros(self.N, dtype=np.int64)
        states = 1
        for i in ids:
            card = self.space.cards[i]
            index = index * card + self.rows[:, i]
            states *= card
        return index, states

    def state_indices(self) -> np.ndarray:
        """Joint index of every row."""
        return self.joint_index(self.space.ids)[0]

    def counts(self, ids: Sequence[int]) -> np.ndarray:
        """Dense counts over the joint values of ``ids`` (given order)."""
        index, states = self.joint_index(ids)
        if states > DENSE_COUNT_LIMIT:
            raise SpaceError(f"{states} states are too many for dense counts")
        return np.bincount(index, minlength=states)


def joint_counts(d: Dataset, ids: Iterable[int]) -> np.ndarray:
    """Counts over the listed variables in ascending id order."""
    return d.counts(d.space.subset(ids))


def empirical_distribution(d: Dataset) -> JointTable:
    """p̃(x) = N_x / N over the full space."""
    if d.N == 0:
        raise EmptyDatasetError()
    d.space.require_dense()
    counts = np.bincount(d.state_indices(), minlength=d.space.total_states)
    return JointTable(d.space, counts / d.N)


def reconstruct_counts(p: JointTable, N: int) -> np.ndarray:
    """Recover integer counts from an empirical table built from N rows."""
    return np.rint(p.probs * N).astype(np.int64)
