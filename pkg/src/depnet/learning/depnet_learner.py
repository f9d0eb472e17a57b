# /src/depnet/learning/depnet_learner.py
# Dependency-network learning: per-node greedy structure search and counting CPTs

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .penalty import PenaltyKind, penalty
from .stats import SuffStats, empirical_conditional_entropy
from ..core.dataset import Dataset
from ..errors import EmptyDatasetError
from ..models.cpt import Cpt, SelectionWeights
from ..models.depnet import DependencyNetwork

logger = logging.getLogger(__name__)

# Costs closer than this are treated as equal (ties, not improvements).
TIE_TOL = 1e-12


@dataclass(frozen=True)
class NodeSearch:
    """Outcome of the greedy input search of one node."""
    node: int
    inputs: Tuple[int, ...]
    evaluations: int
    trace: Tuple[float, ...] = field(default_factory=tuple)
    guard_applied: bool = False

    @property
    def cost(self) -> float:
        return self.trace[-1]


@dataclass(frozen=True, eq=False)
class LearnResult:
    """A learned dependency network and the search effort behind it."""
    network: DependencyNetwork
    searches: Tuple[NodeSearch, ...]

    @property
    def evaluations(self) -> Tuple[int, ...]:
        return tuple(s.evaluations for s in self.searches)

    @property
    def total_evaluations(self) -> int:
        return sum(self.evaluations)


# ========== Parameter Learning ==========

def learn_parameters(
    d: Dataset,
    i: int,
    inputs: Sequence[int],
    positivity: bool = True
) -> Cpt:
    """θ_i(x_i|y_i) = N_{x_i y_i} / N_{y_i}.

    With ``positivity`` every zero count is raised to one first, so rows
    never seen in the data become uniform and all entries are positive.
    Without it such rows stay undefined (NaN).
    """
    if d.N == 0:
        raise EmptyDatasetError()
    inputs = tuple(inputs)
    d.space.subset([i, *inputs])
    if i in inputs:
        raise ValueError(f"node {i} cannot be its own input")
    counts = SuffStats.from_dataset(d, i, inputs).n_xy.astype(np.float64)
    if positivity:
        counts[counts == 0] = 1.0
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        table = np.where(totals > 0, counts / np.where(totals > 0, totals, 1.0), np.nan)
    return Cpt.from_space(d.space, i, inputs, table)


# ========== Structure Learning ==========

def scost(d: Dataset, i: int, inputs: Sequence[int], pen: PenaltyKind = PenaltyKind.MDL) -> float:
    """scost_i(Y_i) = H_{p̃*}(X_i|Y_i) + R_i(Y_i, N), from raw counts."""
    if d.N == 0:
        raise EmptyDatasetError()
    inputs = tuple(inputs)
    entropy = empirical_conditional_entropy(d, i, inputs)
    return entropy + penalty(pen, d.space.cards[i], d.space.states_of(inputs), d.N)


def _candidates(n: int, i: int, current: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    """Single additions (ascending id) followed by single removals (ascending id)."""
    adds = [tuple(sorted(current + (j,))) for j in range(n) if j != i and j not in current]
    removes = [tuple(v for v in current if v != j) for j in current]
    return adds + removes


def learn_structure_node(
    d: Dataset,
    i: int,
    pen: PenaltyKind = PenaltyKind.MDL,
    guard: bool = False
) -> NodeSearch:
    """Greedy search for Y_i starting from the empty set.

    Each round scores every single-add and single-remove candidate, moves
    to the cheapest one when it strictly improves and stops otherwise.
    Equal costs go to the earlier candidate: additions before removals,
    then lowest variable id. With ``guard`` the result is replaced by
    X_{-i} when that is cheaper. ``evaluations`` counts candidate scorings.
    """
    if d.N == 0:
        raise EmptyDatasetError()
    d.space.subset([i])
    current: Tuple[int, ...] = ()
    current_cost = scost(d, i, current, pen)
    trace = [current_cost]
    evaluations = 0
    while True:
        best: Optional[Tuple[int, ...]] = None
        best_cost = 0.0
        for candidate in _candidates(d.space.n, i, current):
            cost = scost(d, i, candidate, pen)
            evaluations += 1
            if best is None or cost < best_cost - TIE_TOL:
                best, best_cost = candidate, cost
        if best is None or best_cost >= current_cost - TIE_TOL:
            break
        logger.debug(f"Node {i}: inputs {current} -> {best} (scost {current_cost:.6g} -> {best_cost:.6g})")
        current, current_cost = best, best_cost
        trace.append(current_cost)

    guard_applied = False
    if guard:
        everything = tuple(j for j in d.space.ids if j != i)
        full_cost = scost(d, i, everything, pen)
        if current_cost > full_cost:
            logger.debug(f"Node {i}: guard replaces {current} by all other variables")
            current, current_cost = everything, full_cost
            trace.append(full_cost)
            guard_applied = True

    return NodeSearch(
        node=i,
        inputs=current,
        evaluations=evaluations,
        trace=tuple(trace),
        guard_applied=guard_applied,
    )


def learn(
    d: Dataset,
    pen: PenaltyKind = PenaltyKind.MDL,
    positivity: bool = True,
    weights: Optional[Sequence[float]] = None,
    guard: bool = False
) -> LearnResult:
    """Learn every node independently: inputs by greedy search, then CPT by counting."""
    if d.N == 0:
        raise EmptyDatasetError()
    searches = []
    cpts = []
    for i in d.space.ids:
        search = learn_structure_node(d, i, pen, guard)
        searches.append(search)
        cpts.append(learn_parameters(d, i, search.inputs, positivity))
    network = DependencyNetwork(
        space=d.space,
        cpts=tuple(cpts),
        weights=SelectionWeights(weights) if weights is not None else None,
    )
    result = LearnResult(network=network, searches=tuple(searches))
    logger.debug(f"Learned dependency network over {d.space.n} nodes with {result.total_evaluations} evaluations")
    return result
