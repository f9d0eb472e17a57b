# /src/depnet/core/__init__.py
# Exact arithmetic over discrete joint distributions

from .space import VarSpace, Assignment, PartialAssignment, MAX_DENSE_STATES
from .joint import (
    JointTable,
    ConditionalTable,
    marginal,
    conditional,
    full_conditional,
    entropy,
    conditional_entropy,
    kl_divergence,
    total_variation,
)
from .dataset import Dataset, empirical_distribution, joint_counts, reconstruct_counts

__all__ = [
    "VarSpace",
    "Assignment",
    "PartialAssignment",
    "MAX_DENSE_STATES",
    "JointTable",
    "ConditionalTable",
    "marginal",
    "conditional",
    "full_conditional",
    "entropy",
    "conditional_entropy",
    "kl_divergence",
    "total_variation",
    "Dataset",
    "empirical_distribution",
    "joint_counts",
    "reconstruct_counts",
]
