# /src/depnet/models/__init__.py
# Network representations: CPTs, dependency networks, Bayesian networks

from .cpt import Cpt, SelectionWeights
from .depnet import DependencyNetwork
from .bayesnet import BayesianNetwork, parent_graph, require_acyclic, topological_order

__all__ = [
    "Cpt",
    "SelectionWeights",
    "DependencyNetwork",
    "BayesianNetwork",
    "parent_graph",
    "require_acyclic",
    "topological_order",
]
