# /src/depnet/eval/evaluate.py
# Output accuracy and per-node manifold distances of learned networks

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from ..core.dataset import Dataset, empirical_distribution
from ..core.joint import JointTable, conditional_entropy, entropy, kl_divergence
from ..infogeo.geometry import kl_to_manifold
from ..models.depnet import DependencyNetwork

logger = logging.getLogger(__name__)


def eval_output(outputs: Dataset, p_true: JointTable) -> float:
    """KL(π̃‖p*) of the empirical output distribution against the truth.

    Returns +inf, with a logged warning, when the outputs hit a state the
    truth rules out.
    """
    if outputs.space != p_true.space:
        raise ValueError("outputs and truth live on different spaces")
    value = kl_divergence(empirical_distribution(outputs), p_true)
    if math.isinf(value):
        logger.warning("Output data visits states outside the support of the true distribution")
    return value


@dataclass(frozen=True)
class NodeRow:
    """Learning behaviour of one node.

    Entropies are taken under the training distribution p̃*.
    """
    node: int
    inputs: Tuple[int, ...]
    weight: float
    entropy: float
    cond_entropy: float
    kl_data: float
    kl_true: float

    @property
    def generalizes(self) -> bool:
        """KL(p̃*‖E(θ_i)) ≥ KL(p*‖E(θ_i))."""
        return self.kl_data >= self.kl_true

    def to_dict(self) -> Dict[str, Any]:
        return {
            "node": self.node,
            "inputs": list(self.inputs),
            "weight": self.weight,
            "entropy": self.entropy,
            "cond_entropy": self.cond_entropy,
            "kl_data": self.kl_data,
            "kl_true": self.kl_true,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NodeRow":
        return cls(
            node=data["node"],
            inputs=tuple(data["inputs"]),
            weight=data["weight"],
            entropy=data["entropy"],
            cond_entropy=data["cond_entropy"],
            kl_data=data["kl_data"],
            kl_true=data["kl_true"],
        )


@dataclass(frozen=True)
class NodeTable:
    rows: Tuple[NodeRow, ...]

    @property
    def avg_kl_data(self) -> float:
        """Σ_i c_i KL(p̃*‖E(θ_i))."""
        return math.fsum(r.weight * r.kl_data for r in self.rows)

    @property
    def avg_kl_true(self) -> float:
        """Σ_i c_i KL(p*‖E(θ_i)), an upper bound on FC(p*‖π)."""
        return math.fsum(r.weight * r.kl_true for r in self.rows)

    @property
    def generalization_rate(self) -> float:
        """Share of nodes with KL(p̃*‖E(θ_i)) ≥ KL(p*‖E(θ_i))."""
        return sum(r.generalizes for r in self.rows) / len(self.rows)


def node_table(dn: DependencyNetwork, p_data: JointTable, p_true: JointTable) -> NodeTable:
    """H(X_i), H(X_i|Y_i), KL(p̃*‖E(θ_i)) and KL(p*‖E(θ_i)) for every node."""
    rows: List[NodeRow] = []
    for i, cpt in enumerate(dn.cpts):
        rows.append(NodeRow(
            node=i,
            inputs=cpt.inputs,
            weight=float(dn.weights.c[i]),
            entropy=entropy(p_data, [i]),
            cond_entropy=conditional_entropy(p_data, [i], cpt.inputs),
            kl_data=kl_to_manifold(p_data, cpt),
            kl_true=kl_to_manifold(p_true, cpt),
        ))
        logger.debug(f"Node {i}: KL(data) {rows[-1].kl_data:.6g}, KL(true) {rows[-1].kl_true:.6g}")
    return NodeTable(rows=tuple(rows))
