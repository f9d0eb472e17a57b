# /src/depnet/models/cpt.py
# Cpt and SelectionWeights - the per-node parameters of a network

from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.space import VarSpace
from ..errors import SpaceError, UndefinedRowError

ROW_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Cpt:
    """Conditional probability table θ_i(X_i|Y_i) of one node.

    ``table[y, x_i]`` holds θ_i(x_i|y) where y is the mixed-radix index of
    the input assignment in ``inputs`` order. A row of NaN marks an input
    assignment that was never observed while learning without the
    positivity trick.
    """
    child: int
    child_card: int
    inputs: Tuple[int, ...]
    input_cards: Tuple[int, ...]
    table: np.ndarray

    def __post_init__(self):
        inputs = tuple(int(i) for i in self.inputs)
        input_cards = tuple(int(c) for c in self.input_cards)
        if self.child in inputs:
            raise SpaceError(f"node {self.child} cannot be its own input")
        if len(set(inputs)) != len(inputs):
            raise SpaceError(f"duplicate inputs for node {self.child}: {inputs}")
        if len(inputs) != len(input_cards):
            raise SpaceError("inputs and input_cards differ in length")
        rows = 1
        for card in input_cards:
            rows *= card
        table = np.array(self.table, dtype=np.float64).reshape(rows, self.child_card)
        defined = ~np.isnan(table).any(axis=1)
        if np.isnan(table[~defined]).sum() != table[~defined].size:
            raise ValueError(f"node {self.child}: partially undefined CPT row")
        body = table[defined]
        if np.any(body < 0):
            raise ValueError(f"node {self.child}: negative CPT entry")
        if body.size and np.max(np.abs(body.sum(axis=1) - 1.0)) > ROW_TOL:
            raise ValueError(f"node {self.child}: CPT rows must sum to 1")
        table.flags.writeable = False
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "input_cards", input_cards)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_space(
        cls,
        space: VarSpace,
        child: int,
        inputs: Sequence[int],
        table: np.ndarray
    ) -> "Cpt":
        """Build a CPT whose cardinalities are read from a space."""
        space.subset([child, *inputs])
        return cls(
            child=child,
            child_card=space.cards[child],
            inputs=tuple(inputs),
            input_cards=tuple(space.cards[i] for i in inputs),
            table=table,
        )

    @classmethod
    def uniform(cls, space: VarSpace, child: int, inputs: Sequence[int] = ()) -> "Cpt":
        rows = space.states_of(inputs)
        card = space.cards[child]
        return cls.from_space(space, child, inputs, np.full((rows, card), 1.0 / card))

    @property
    def input_states(self) -> int:
        return int(self.table.shape[0])

    @property
    def defined(self) -> np.ndarray:
        """Mask of rows that hold a distribution."""
        return ~np.isnan(self.table).any(axis=1)

    def is_positive(self) -> bool:
        return bool(np.all(self.table > 0))

    # ========== Lookup ==========

    def input_index(self, state: Sequence[int]) -> int:
        """Row index for a complete assignment of the network."""
        index = 0
        for var, card in zip(self.inputs, self.input_cards):
            index = index * card + int(state[var])
        return index

    def input_values(self, index: int) -> Dict[int, int]:
        """Decode a row index back into {input id: value}."""
        if not self.inputs:
            return {}
        values = np.unravel_index(index, self.input_cards)
        return {var: int(v) for var, v in zip(self.inputs, values)}

    def row(self, index: int) -> np.ndarray:
        """θ_i(·|y) for a row index; raises when the row is undefined."""
        row = self.table[index]
        if np.isnan(row[0]):
            raise UndefinedRowError(self.child, self.input_values(index))
        return row

    def row_for(self, state: Sequence[int]) -> np.ndarray:
        return self.row(self.input_index(state))

    def broadcast(self, space: VarSpace) -> np.ndarray:
        """θ_i(x_i|y_i(x)) laid out on the joint tensor of ``space``."""
        involved = self.inputs + (self.child,)
        tensor = self.table.reshape(self.input_cards + (self.child_card,))
        order = sorted(range(len(involved)), key=lambda k: involved[k])
        tensor = np.transpose(tensor, order)
        present = sorted(involved)
        shape = [space.cards[v] if v in present else 1 for v in space.ids]
        return np.broadcast_to(tensor.reshape(shape), space.cards)

    def restrict(self, clamps: Mapping[int, int]) -> "Cpt":
        """θ_i(X_i|Z_i v): fix clamped inputs and keep the rest, ids unchanged."""
        kept = [k for k, var in enumerate(self.inputs) if var not in clamps]
        tensor = self.table.reshape(self.input_cards + (self.child_card,))
        index = tuple(
            clamps[var] if var in clamps else slice(None) for var in self.inputs
        )
        tensor = tensor[index]
        return Cpt(
            child=self.child,
            child_card=self.child_card,
            inputs=tuple(self.inputs[k] for k in kept),
            input_cards=tuple(self.input_cards[k] for k in kept),
            table=tensor.reshape(-1, self.child_card),
        )

    def relabel(self, mapping: Mapping[int, int]) -> "Cpt":
        """Rename variable ids (child and inputs) through ``mapping``."""
        return Cpt(
            child=mapping[self.child],
            child_card=self.child_card,
            inputs=tuple(mapping[v] for v in self.inputs),
            input_cards=self.input_cards,
            table=self.table,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "child": self.child,
            "child_card": self.child_card,
            "inputs": list(self.inputs),
            "input_cards": list(self.input_cards),
            "table": self.table.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Cpt":
        return cls(
            child=data["child"],
            child_card=data["child_card"],
            inputs=tuple(data["inputs"]),
            input_cards=tuple(data["input_cards"]),
            table=np.array(data["table"], dtype=np.float64),
        )


@dataclass(frozen=True, eq=False)
class SelectionWeights:
    """Node-selection probabilities c_i of random-pseudo-Gibbs sampling."""
    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=np.float64).reshape(-1)
        if np.any(c < 0):
            raise ValueError("selection weights must be non-negative")
        if abs(c.sum() - 1.0) > ROW_TOL:
            raise ValueError(f"selection weights sum to {c.sum()!r}, not 1")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)

    @classmethod
    def uniform(cls, n: int) -> "SelectionWeights":
        return cls(np.full(n, 1.0 / n))

    def __len__(self) -> int:
        return int(self.c.size)

    def renormalized(self, clamped: Optional[Sequence[int]] = None) -> np.ndarray:
        """Weights with clamped nodes zeroed and the rest rescaled to sum 1."""
        c = self.c.copy()
        if clamped:
            c[list(clamped)] = 0.0
        total = c.sum()
        if total <= 0:
            raise ValueError("no fireable node: every node is clamped or has zero weight")
        return c / total

    def weighted(self, values: Sequence[float]) -> float:
        """Σ_i c_i·values[i] (the averages reported per network)."""
        return float(np.dot(self.c, np.asarray(values, dtype=np.float64)))
