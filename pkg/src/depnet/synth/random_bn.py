# /src/depnet/synth/random_bn.py
# Random Bayesian networks with Dirichlet CPTs and their product-form joint

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from ..core.joint import JointTable
from ..core.space import VarSpace
from ..models.bayesnet import BayesianNetwork
from ..models.cpt import Cpt
from ..sampling.rng import seed_streams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RandomBnSpec:
    """n nodes, exactly m edges, CPT rows from a symmetric Dirichlet(α)."""
    n: int
    m: int
    seed: int = 0
    alpha: float = 1.0
    card: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"a network needs at least one node; got {self.n}")
        if not 0 <= self.m <= self.n * (self.n - 1) // 2:
            raise ValueError(f"{self.m} edges cannot form a DAG over {self.n} nodes")
        if self.alpha <= 0:
            raise ValueError(f"Dirichlet concentration must be positive; got {self.alpha}")

    @property
    def name(self) -> str:
        return f"BN{self.n}-{self.m}"

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "seed": self.seed, "alpha": self.alpha, "card": self.card}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RandomBnSpec":
        return cls(**data)


def random_bn(spec: RandomBnSpec) -> BayesianNetwork:
    """Random DAG with m edges: a random topological order plus a random subset of forward pairs."""
    streams = seed_streams(spec.seed, ("order", "edges", "cpts"))
    order = streams["order"].permutation(spec.n)
    forward: List[Tuple[int, int]] = [
        (int(order[a]), int(order[b])) for a in range(spec.n) for b in range(a + 1, spec.n)
    ]
    chosen = streams["edges"].choice(len(forward), size=spec.m, replace=False) if spec.m else []
    parents: List[List[int]] = [[] for _ in range(spec.n)]
    for k in sorted(int(k) for k in chosen):
        u, v = forward[k]
        parents[v].append(u)

    space = VarSpace(tuple([spec.card] * spec.n))
    cpt_rng = streams["cpts"]
    cpts = []
    for i in range(spec.n):
        inputs = tuple(sorted(parents[i]))
        rows = cpt_rng.dirichlet(np.full(spec.card, spec.alpha), size=space.states_of(inputs))
        cpts.append(Cpt.from_space(space, i, inputs, rows))
    bn = BayesianNetwork(space=space, cpts=tuple(cpts))
    logger.debug(f"Generated {spec.name} (seed {spec.seed}) with {len(bn.edges())} edges")
    return bn


def bn_joint(bn: BayesianNetwork) -> JointTable:
    """π(x) = Π_i π(x_i|y_i) evaluated densely on every state."""
    bn.space.require_dense()
    tensor = np.ones(bn.space.cards)
    for cpt in bn.cpts:
        tensor *= cpt.broadcast(bn.space)
    return JointTable.from_weights(bn.space, tensor)
