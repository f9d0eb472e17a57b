# /src/depnet/synth/__init__.py
# Ground-truth generators and random instances

from .ising import IsingSpec, ising_joint, MAX_ISING_SITES
from .random_bn import RandomBnSpec, random_bn, bn_joint
from .sample import sample_joint
from .random_models import random_joint, random_cpt, random_depnet, compatible_depnet

__all__ = [
    "IsingSpec",
    "ising_joint",
    "MAX_ISING_SITES",
    "RandomBnSpec",
    "random_bn",
    "bn_joint",
    "sample_joint",
    "random_joint",
    "random_cpt",
    "random_depnet",
    "compatible_depnet",
]
