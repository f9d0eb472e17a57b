# /src/depnet/core/joint.py
# JointTable and exact information quantities over dense joint distributions

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import entr, rel_entr

from .space import VarSpace
from ..errors import SpaceError

# Tolerance for accepting a table as normalized.
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class JointTable:
    """Dense, normalized probability table p(X) over a VarSpace.

    ``probs[k]`` is the probability of the assignment with mixed-radix
    index k. Tables are immutable: the array is marked read-only.
    """
    space: VarSpace
    probs: np.ndarray

    def __post_init__(self):
        self.space.require_dense()
        probs = np.array(self.probs, dtype=np.float64).reshape(-1)
        if probs.shape != (self.space.total_states,):
            raise SpaceError(
                f"table has {probs.size} entries; space has {self.space.total_states} states"
            )
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and non-negative")
        total = probs.sum()
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_weights(cls, space: VarSpace, weights: np.ndarray) -> "JointTable":
        """Normalize non-negative weights into a table."""
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        total = weights.sum()
        if total <= 0:
            raise ValueError("weights must have positive mass")
        return cls(space, weights / total)

    @classmethod
    def uniform(cls, space: VarSpace) -> "JointTable":
        return cls(space, np.full(space.total_states, 1.0 / space.total_states))

    @property
    def tensor(self) -> np.ndarray:
        """View of the table with one axis per variable."""
        return self.probs.reshape(self.space.cards)

    def prob(self, assignment: Sequence[int]) -> float:
        return float(self.probs[self.space.index(assignment)])

    def is_positive(self) -> bool:
        return bool(np.all(self.probs > 0))

    def __repr__(self) -> str:
        return f"JointTable(cards={self.space.cards})"


@dataclass(frozen=True, eq=False)
class ConditionalTable:
    """Conditional table p(T|G).

    ``rows`` has shape (states of G, states of T), both in mixed-radix
    order of the sorted variable ids. Rows whose condition has zero
    probability are flagged in ``defined`` and hold NaN.
    """
    target: Tuple[int, ...]
    given: Tuple[int, ...]
    given_cards: Tuple[int, ...]
    rows: np.ndarray
    defined: np.ndarray

    def row(self, given_values: Sequence[int] = ()) -> np.ndarray:
        """Row for one assignment of the given variables (in ``given`` order)."""
        if len(given_values) != len(self.given):
            raise SpaceError(f"expected {len(self.given)} given values")
        index = 0
        for value, card in zip(given_values, self.given_cards):
            index = index * card + int(value)
        if not self.defined[index]:
            raise ValueError(f"condition {tuple(given_values)} has zero probability")
        return self.rows[index]


# ========== Table Arithmetic ==========

def _check_same_space(p: JointTable, q: JointTable) -> None:
    if p.space != q.space:
        raise SpaceError(f"spaces differ: {p.space.cards} vs {q.space.cards}")


def marginal(p: JointTable, subset: Iterable[int]) -> JointTable:
    """Marginal of p over a nonempty variable subset (ascending id order)."""
    keep = p.space.subset(subset)
    drop = tuple(i for i in p.space.ids if i not in keep)
    tensor = p.tensor.sum(axis=drop) if drop else p.tensor
    return JointTable.from_weights(p.space.sub_space(keep), tensor)


def _marginal_tensor(p: JointTable, keep: Tuple[int, ...]) -> np.ndarray:
    drop = tuple(i for i in p.space.ids if i not in keep)
    return p.tensor.sum(axis=drop) if drop else np.asarray(p.tensor)


def conditional(p: JointTable, target: Iterable[int], given: Iterable[int]) -> ConditionalTable:
    """Conditional table p(T|G); T and G must be disjoint."""
    target = p.space.subset(target)
    given = p.space.subset(given, allow_empty=True)
    overlap = set(target) & set(given)
    if overlap:
        raise SpaceError(f"target and given overlap on {sorted(overlap)}")
    keep = tuple(sorted(target + given))
    joint = _marginal_tensor(p, keep)
    # Reorder axes as (given..., target...)
    order = [keep.index(i) for i in given + target]
    joint = np.transpose(joint, order)
    g_states = p.space.states_of(given)
    t_states = p.space.states_of(target)
    joint = joint.reshape(g_states, t_states)
    mass = joint.sum(axis=1)
    defined = mass > 0
    rows = np.full_like(joint, np.nan)
    rows[defined] = joint[defined] / mass[defined, None]
    return ConditionalTable(
        target=target,
        given=given,
        given_cards=tuple(p.space.cards[i] for i in given),
        rows=rows,
        defined=defined,
    )


def full_conditional(p: JointTable, i: int) -> np.ndarray:
    """p(x_i|x_{-i}) on the joint tensor; NaN where p(x_{-i}) = 0."""
    p.space.subset([i])
    tensor = p.tensor
    rest = tensor.sum(axis=i, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(rest > 0, tensor / np.where(rest > 0, rest, 1.0), np.nan)


def entropy(p: JointTable, subset: Optional[Iterable[int]] = None) -> float:
    """Entropy in nats of the marginal of p on a subset (default: all)."""
    keep = p.space.ids if subset is None else p.space.subset(subset)
    return float(entr(_marginal_tensor(p, keep)).sum())


def conditional_entropy(p: JointTable, target: Iterable[int], given: Iterable[int] = ()) -> float:
    """H(T|G) = H(T ∪ G) − H(G); plain entropy when G is empty."""
    target = p.space.subset(target)
    given = p.space.subset(given, allow_empty=True)
    overlap = set(target) & set(given)
    if overlap:
        raise SpaceError(f"target and given overlap on {sorted(overlap)}")
    joint = entropy(p, target + given)
    return joint - entropy(p, given) if given else joint


def kl_divergence(p: JointTable, q: JointTable) -> float:
    """KL(p‖q) in nats; +inf when p puts mass where q has none."""
    _check_same_space(p, q)
    value = float(rel_entr(p.probs, q.probs).sum())
    return math.inf if math.isinf(value) else max(value, 0.0)


def total_variation(p: JointTable, q: JointTable) -> float:
    """Total variation distance ½ Σ |p − q|."""
    _check_same_space(p, q)
    return float(0.5 * np.abs(p.probs - q.probs).sum())
