# /src/depnet/sampling/__init__.py
# Pseudo-Gibbs and ancestral samplers

from .rng import STREAMS, seed_streams, cumulative, inverse_cdf
from .gibbs import (
    SelectionMode,
    SamplerConfig,
    SampleRun,
    Inference,
    fire_node,
    run,
    clamp_network,
    infer,
)
from .ancestral import ancestral_sample

__all__ = [
    "STREAMS",
    "seed_streams",
    "cumulative",
    "inverse_cdf",
    "SelectionMode",
    "SamplerConfig",
    "SampleRun",
    "Inference",
    "fire_node",
    "run",
    "clamp_network",
    "infer",
    "ancestral_sample",
]
