# /src/depnet/core/space.py
# VarSpace - ordered discrete variables and the mixed-radix joint index

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from ..errors import SpaceError

# Dense tables above this many states are refused.
MAX_DENSE_STATES = 2 ** 26

# Largest joint index representable in int64.
_MAX_INDEX = 2 ** 63 - 1

Assignment = Tuple[int, ...]
PartialAssignment = Dict[int, int]


@dataclass(frozen=True)
class VarSpace:
    """Ordered list of discrete variables X_0 … X_{n-1}.

    Variable ids are implicit (0..n-1, no gaps). The joint index is the
    mixed-radix encoding of an assignment with variable 0 as the most
    significant digit, which is numpy's C order for a tensor of shape
    ``cards``.
    """
    cards: Tuple[int, ...]

    def __post_init__(self):
        cards = tuple(int(c) for c in self.cards)
        if not cards:
            raise SpaceError("a variable space needs at least one variable")
        for i, card in enumerate(cards):
            if card < 2:
                raise SpaceError(f"variable {i} has cardinality {card}; at least 2 required")
        total = 1
        for card in cards:
            total *= card
        if total > _MAX_INDEX:
            raise SpaceError(f"joint index overflows: {total} states")
        object.__setattr__(self, "cards", cards)

    @classmethod
    def binary(cls, n: int) -> "VarSpace":
        """Space of n binary variables."""
        return cls(tuple([2] * n))

    @property
    def n(self) -> int:
        return len(self.cards)

    @property
    def ids(self) -> Tuple[int, ...]:
        return tuple(range(self.n))

    @cached_property
    def total_states(self) -> int:
        total = 1
        for card in self.cards:
            total *= card
        return total

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        """Place value of each variable in the joint index."""
        strides = []
        acc = 1
        for card in reversed(self.cards):
            strides.append(acc)
            acc *= card
        return tuple(reversed(strides))

    # ========== Guards ==========

    def require_dense(self, limit: int = MAX_DENSE_STATES) -> None:
        """Refuse dense tables over this space when it is too large."""
        if self.total_states > limit:
            raise SpaceError(
                f"{self.total_states} joint states exceed the dense-table limit of {limit}"
            )

    def subset(self, ids: Iterable[int], allow_empty: bool = False) -> Tuple[int, ...]:
        """Validate a variable subset and return it as a sorted tuple."""
        ids = tuple(sorted(set(int(i) for i in ids)))
        if not ids and not allow_empty:
            raise SpaceError("variable subset must be nonempty")
        for i in ids:
            if not 0 <= i < self.n:
                raise SpaceError(f"unknown variable id {i} (space has {self.n} variables)")
        return ids

    def validate(self, assignment: Sequence[int]) -> Assignment:
        """Check that an assignment is complete and in range."""
        values = tuple(int(v) for v in assignment)
        if len(values) != self.n:
            raise SpaceError(f"assignment has {len(values)} values; expected {self.n}")
        for i, (value, card) in enumerate(zip(values, self.cards)):
            if not 0 <= value < card:
                raise SpaceError(f"value {value} out of range for variable {i} (cardinality {card})")
        return values

    def validate_partial(self, assignment: Mapping[int, int]) -> PartialAssignment:
        """Check a partial assignment such as a clamp set."""
        clean: PartialAssignment = {}
        for var, value in assignment.items():
            var, value = int(var), int(value)
            if not 0 <= var < self.n:
                raise SpaceError(f"unknown variable id {var}")
            if not 0 <= value < self.cards[var]:
                raise SpaceError(f"value {value} out of range for variable {var}")
            clean[var] = value
        return dict(sorted(clean.items()))

    # ========== Indexing ==========

    def index(self, assignment: Sequence[int]) -> int:
        """Mixed-radix index of a complete assignment."""
        values = self.validate(assignment)
        return sum(v * s for v, s in zip(values, self.strides))

    def assignment(self, index: int) -> Assignment:
        """Inverse of index()."""
        if not 0 <= index < self.total_states:
            raise SpaceError(f"joint index {index} out of range")
        return tuple(int(v) for v in np.unravel_index(index, self.cards))

    def sub_space(self, ids: Iterable[int]) -> "VarSpace":
        """Reduced space over a subset, renumbered in ascending id order."""
        ids = self.subset(ids)
        return VarSpace(tuple(self.cards[i] for i in ids))

    def states_of(self, ids: Sequence[int]) -> int:
        """Number of joint values the listed variables take (1 for none)."""
        total = 1
        for i in ids:
            total *= self.cards[i]
        return total

    def grid(self) -> np.ndarray:
        """All assignments in index order, shape (total_states, n)."""
        self.require_dense()
        return np.stack(np.unravel_index(np.arange(self.total_states), self.cards), axis=1)

    def to_dict(self) -> Dict[str, Any]:
        return {"cards": list(self.cards)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VarSpace":
        return cls(tuple(data["cards"]))
