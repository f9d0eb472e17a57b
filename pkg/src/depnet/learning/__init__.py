# /src/depnet/learning/__init__.py
# Structure and parameter learning for dependency networks and the BN baseline

from .penalty import PenaltyKind, penalty, degrees_of_freedom
from .stats import SuffStats, empirical_conditional_entropy
from .depnet_learner import (
    NodeSearch,
    LearnResult,
    learn_parameters,
    scost,
    learn_structure_node,
    learn,
)
from .bayesnet_learner import MoveKind, Move, BnLearnResult, bn_scost, learn_bn

__all__ = [
    "PenaltyKind",
    "penalty",
    "degrees_of_freedom",
    "SuffStats",
    "empirical_conditional_entropy",
    "NodeSearch",
    "LearnResult",
    "learn_parameters",
    "scost",
    "learn_structure_node",
    "learn",
    "MoveKind",
    "Move",
    "BnLearnResult",
    "bn_scost",
    "learn_bn",
]
