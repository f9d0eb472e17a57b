# /src/depnet/models/depnet.py
# DependencyNetwork - one CPT per node, possibly cyclic, plus selection weights

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .cpt import Cpt, SelectionWeights
from ..core.space import VarSpace
from ..errors import SpaceError


@dataclass(frozen=True, eq=False)
class DependencyNetwork:
    """Dependency network: node i owns variable X_i, inputs Y_i ⊆ X_{-i} and θ_i.

    The input graph may contain cycles; nothing ties the CPTs to a common
    joint distribution.
    """
    space: VarSpace
    cpts: Tuple[Cpt, ...]
    weights: Optional[SelectionWeights] = field(default=None)

    def __post_init__(self):
        cpts = tuple(self.cpts)
        if len(cpts) != self.space.n:
            raise SpaceError(f"expected {self.space.n} CPTs; got {len(cpts)}")
        for i, cpt in enumerate(cpts):
            if cpt.child != i:
                raise SpaceError(f"CPT at position {i} belongs to node {cpt.child}")
            if cpt.child_card != self.space.cards[i]:
                raise SpaceError(f"node {i}: CPT cardinality does not match the space")
            self.space.subset(cpt.inputs, allow_empty=True)
            for var, card in zip(cpt.inputs, cpt.input_cards):
                if self.space.cards[var] != card:
                    raise SpaceError(f"node {i}: input {var} has the wrong cardinality")
        weights = self.weights or SelectionWeights.uniform(self.space.n)
        if len(weights) != self.space.n:
            raise SpaceError("one selection weight per node is required")
        object.__setattr__(self, "cpts", cpts)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return self.space.n

    def inputs(self, i: int) -> Tuple[int, ...]:
        return self.cpts[i].inputs

    def edges(self) -> List[Tuple[int, int]]:
        """Directed edges input → node."""
        return [(j, cpt.child) for cpt in self.cpts for j in cpt.inputs]

    def is_positive(self) -> bool:
        return all(cpt.is_positive() for cpt in self.cpts)

    def fireable(self, clamps: Optional[Mapping[int, int]] = None) -> List[int]:
        """Node ids that may fire under a clamp set, ascending."""
        clamps = clamps or {}
        return [i for i in self.space.ids if i not in clamps]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space.to_dict(),
            "cpts": [cpt.to_dict() for cpt in self.cpts],
            "weights": self.weights.c.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DependencyNetwork":
        return cls(
            space=VarSpace.from_dict(data["space"]),
            cpts=tuple(Cpt.from_dict(c) for c in data["cpts"]),
            weights=SelectionWeights(data["weights"]),
        )

    @classmethod
    def from_cpts(
        cls,
        space: VarSpace,
        cpts: Sequence[Cpt],
        weights: Optional[Sequence[float]] = None
    ) -> "DependencyNetwork":
        return cls(
            space=space,
            cpts=tuple(cpts),
            weights=SelectionWeights(weights) if weights is not None else None,
        )
