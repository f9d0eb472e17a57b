# /src/depnet/synth/random_models.py
# Random positive instances for property checks: joints, CPTs and dependency networks

from typing import Optional, Sequence, Union

import numpy as np

from ..core.joint import JointTable, full_conditional
from ..core.space import VarSpace
from ..models.cpt import Cpt, SelectionWeights
from ..models.depnet import DependencyNetwork

Seed = Union[int, np.random.Generator]


def _generator(rng: Seed) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(rng))))


def random_joint(space: VarSpace, rng: Seed = 0, alpha: float = 1.0) -> JointTable:
    """Joint table drawn from a symmetric Dirichlet(α) over all states."""
    gen = _generator(rng)
    return JointTable.from_weights(space, gen.dirichlet(np.full(space.total_states, alpha)))


def random_cpt(
    space: VarSpace,
    child: int,
    inputs: Sequence[int],
    rng: Seed = 0,
    alpha: float = 1.0
) -> Cpt:
    gen = _generator(rng)
    inputs = space.subset(inputs, allow_empty=True)
    rows = gen.dirichlet(np.full(space.cards[child], alpha), size=space.states_of(inputs))
    return Cpt.from_space(space, child, inputs, rows)


def random_depnet(
    space: VarSpace,
    rng: Seed = 0,
    edge_prob: float = 0.5,
    alpha: float = 1.0,
    random_weights: bool = False
) -> DependencyNetwork:
    """Dependency network with random input sets and Dirichlet CPTs (generally incompatible).

    Each other variable becomes an input of node i with ``edge_prob``.
    """
    gen = _generator(rng)
    cpts = []
    for i in space.ids:
        inputs = [j for j in space.ids if j != i and gen.random() < edge_prob]
        cpts.append(random_cpt(space, i, inputs, gen, alpha))
    weights = gen.dirichlet(np.ones(space.n)) if random_weights else None
    return DependencyNetwork.from_cpts(space, cpts, weights)


def compatible_depnet(
    p: JointTable,
    weights: Optional[Union[SelectionWeights, Sequence[float]]] = None
) -> DependencyNetwork:
    """Network whose CPTs are the full conditionals p(X_i|X_{-i}); p is then stationary."""
    cpts = []
    for i in p.space.ids:
        table = np.moveaxis(full_conditional(p, i), i, -1).reshape(-1, p.space.cards[i])
        inputs = tuple(j for j in p.space.ids if j != i)
        cpts.append(Cpt.from_space(p.space, i, inputs, table))
    if isinstance(weights, SelectionWeights):
        weights = weights.c
    return DependencyNetwork.from_cpts(p.space, cpts, weights)
