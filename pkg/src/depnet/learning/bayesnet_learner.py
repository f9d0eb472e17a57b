# /src/depnet/learning/bayesnet_learner.py
# Bayesian-network baseline: hill climbing over add/remove/reverse edge moves

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .depnet_learner import TIE_TOL, learn_parameters, scost
from .penalty import PenaltyKind
from ..core.dataset import Dataset
from ..errors import EmptyDatasetError
from ..models.bayesnet import BayesianNetwork, parent_graph, require_acyclic

logger = logging.getLogger(__name__)


class MoveKind(str, Enum):
    """Single-edge modifications, in tie-breaking order."""
    ADD = "add"
    REMOVE = "remove"
    REVERSE = "reverse"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    edge: Tuple[int, int]


@dataclass(frozen=True, eq=False)
class BnLearnResult:
    """A learned Bayesian network and the hill-climbing effort behind it."""
    network: BayesianNetwork
    evaluations: int
    moves: Tuple[Move, ...] = field(default_factory=tuple)
    trace: Tuple[float, ...] = field(default_factory=tuple)


def bn_scost(
    d: Dataset,
    parents: Sequence[Sequence[int]],
    pen: PenaltyKind = PenaltyKind.MDL
) -> float:
    """scost(G) = Σ_i H_{p̃*}(X_i|Y_i) + Σ_i R_i, without the constant −H_{p̃*}(X)."""
    if d.N == 0:
        raise EmptyDatasetError()
    if len(parents) != d.space.n:
        raise ValueError(f"expected parent sets for {d.space.n} nodes")
    require_acyclic(parent_graph(d.space.n, parents))
    return sum(scost(d, i, tuple(sorted(ps)), pen) for i, ps in enumerate(parents))


class _HillClimber:
    """Mutable search state of one learn_bn call."""

    def __init__(self, d: Dataset, pen: PenaltyKind):
        self.d = d
        self.pen = pen
        self.n = d.space.n
        self.graph = parent_graph(self.n, [()] * self.n)
        self.family = [scost(d, i, (), pen) for i in range(self.n)]
        self.evaluations = 0

    def parents(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted(self.graph.predecessors(i)))

    def _family_cost(self, i: int, parents: Tuple[int, ...]) -> float:
        return scost(self.d, i, tuple(sorted(parents)), self.pen)

    def candidates(self) -> List[Move]:
        """Acyclic single-edge moves: adds, removes, reverses, each in edge order."""
        moves = []
        for u in range(self.n):
            for v in range(self.n):
                if u == v or self.graph.has_edge(u, v):
                    continue
                if not nx.has_path(self.graph, v, u):
                    moves.append(Move(MoveKind.ADD, (u, v)))
        edges = sorted(self.graph.edges())
        moves.extend(Move(MoveKind.REMOVE, e) for e in edges)
        for u, v in edges:
            self.graph.remove_edge(u, v)
            creates_cycle = nx.has_path(self.graph, u, v)
            self.graph.add_edge(u, v)
            if not creates_cycle:
                moves.append(Move(MoveKind.REVERSE, (u, v)))
        return moves

    def score(self, move: Move) -> Tuple[float, Dict[int, float]]:
        """Total cost after ``move`` and the new cost of each touched family."""
        u, v = move.edge
        touched: Dict[int, float] = {}
        if move.kind is MoveKind.ADD:
            touched[v] = self._family_cost(v, self.parents(v) + (u,))
        elif move.kind is MoveKind.REMOVE:
            touched[v] = self._family_cost(v, tuple(p for p in self.parents(v) if p != u))
        else:
            touched[v] = self._family_cost(v, tuple(p for p in self.parents(v) if p != u))
            touched[u] = self._family_cost(u, self.parents(u) + (v,))
        self.evaluations += 1
        costs = list(self.family)
        for node, cost in touched.items():
            costs[node] = cost
        return sum(costs), touched

    def apply(self, move: Move, touched: Dict[int, float]) -> None:
        u, v = move.edge
        if move.kind is MoveKind.ADD:
            self.graph.add_edge(u, v)
        elif move.kind is MoveKind.REMOVE:
            self.graph.remove_edge(u, v)
        else:
            self.graph.remove_edge(u, v)
            self.graph.add_edge(v, u)
        for node, cost in touched.items():
            self.family[node] = cost


def learn_bn(
    d: Dataset,
    pen: PenaltyKind = PenaltyKind.MDL,
    positivity: bool = True
) -> BnLearnResult:
    """Hill climbing from the empty graph; CPTs by counting once the search stops.

    Every acyclic add/remove/reverse candidate is scored each round; the
    cheapest is taken when it strictly improves. Ties go to the earlier
    candidate (add < remove < reverse, then lexicographic edge).
    ``evaluations`` counts candidate scorings.
    """
    if d.N == 0:
        raise EmptyDatasetError()
    climber = _HillClimber(d, pen)
    current = sum(climber.family)
    trace = [current]
    moves: List[Move] = []
    while True:
        best: Optional[Tuple[Move, Dict[int, float]]] = None
        best_cost = 0.0
        for move in climber.candidates():
            cost, touched = climber.score(move)
            if best is None or cost < best_cost - TIE_TOL:
                best, best_cost = (move, touched), cost
        if best is None or best_cost >= current - TIE_TOL:
            break
        move, touched = best
        climber.apply(move, touched)
        current = sum(climber.family)
        trace.append(current)
        moves.append(move)
        logger.debug(f"BN move {move.kind.value} {move.edge}: scost {current:.6g}")

    cpts = tuple(
        learn_parameters(d, i, climber.parents(i), positivity) for i in range(climber.n)
    )
    network = BayesianNetwork(space=d.space, cpts=cpts)
    logger.debug(f"Learned Bayesian network with {len(network.edges())} edges and {climber.evaluations} evaluations")
    return BnLearnResult(
        network=network,
        evaluations=climber.evaluations,
        moves=tuple(moves),
        trace=tuple(trace),
    )
