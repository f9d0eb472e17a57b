# /src/depnet/models/bayesnet.py
# BayesianNetwork - DAG over the space with one CPT per node over its parents

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import networkx as nx

from .cpt import Cpt
from ..core.space import VarSpace
from ..errors import CycleError, SpaceError


def parent_graph(n: int, parents: Sequence[Sequence[int]]) -> nx.DiGraph:
    """DiGraph with an edge j → i for every parent j of node i."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for child, node_parents in enumerate(parents):
        graph.add_edges_from((int(j), child) for j in node_parents)
    return graph


def require_acyclic(graph: nx.DiGraph) -> None:
    """Raise CycleError naming one cycle when the graph is not a DAG."""
    if nx.is_directed_acyclic_graph(graph):
        return
    cycle = [u for u, _ in nx.find_cycle(graph)]
    raise CycleError(cycle + cycle[:1])


def topological_order(graph: nx.DiGraph) -> List[int]:
    """Kahn-style order that always takes the lowest-id ready node."""
    require_acyclic(graph)
    return list(nx.lexicographical_topological_sort(graph))


@dataclass(frozen=True, eq=False)
class BayesianNetwork:
    """Bayesian network π(X) = Π_i π(X_i|Y_i) with Y_i the parents of node i."""
    space: VarSpace
    cpts: Tuple[Cpt, ...]

    def __post_init__(self):
        cpts = tuple(self.cpts)
        if len(cpts) != self.space.n:
            raise SpaceError(f"expected {self.space.n} CPTs; got {len(cpts)}")
        for i, cpt in enumerate(cpts):
            if cpt.child != i or cpt.child_card != self.space.cards[i]:
                raise SpaceError(f"CPT at position {i} does not match node {i}")
        object.__setattr__(self, "cpts", cpts)
        require_acyclic(self.graph)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def parents(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(cpt.inputs for cpt in self.cpts)

    @property
    def graph(self) -> nx.DiGraph:
        return parent_graph(self.space.n, self.parents)

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(self.graph.edges())

    def order(self) -> List[int]:
        return topological_order(self.graph)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space.to_dict(),
            "cpts": [cpt.to_dict() for cpt in self.cpts],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BayesianNetwork":
        return cls(
            space=VarSpace.from_dict(data["space"]),
            cpts=tuple(Cpt.from_dict(c) for c in data["cpts"]),
        )
