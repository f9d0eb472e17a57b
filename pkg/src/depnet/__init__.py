# /src/depnet/__init__.py
# depnet - dependency networks: learning, pseudo-Gibbs sampling and comparison with Bayesian networks

from .observer import Observer
from .errors import (
    DepnetError,
    SpaceError,
    EmptyDatasetError,
    UndefinedRowError,
    CycleError,
    ConvergenceError,
    FormatError,
)

# Core data
from .core import (
    VarSpace,
    JointTable,
    Dataset,
    empirical_distribution,
    kl_divergence,
)

# Models
from .models import (
    Cpt,
    SelectionWeights,
    DependencyNetwork,
    BayesianNetwork,
)

# Learning
from .learning import (
    PenaltyKind,
    learn,
    learn_bn,
    scost,
    bn_scost,
)

# Sampling
from .sampling import (
    SelectionMode,
    SamplerConfig,
    run,
    infer,
    ancestral_sample,
)

# Ledger
from .events import EventEnvelope, EventSource, EventType, EventOrigin, SystemKind
from .storage import (
    EventStore,
    MemoryEventStore,
    JSONEventStore,
    SQLiteEventStore,
)
from .ingest import IngestAdapter, PipelineIngestAdapter

__version__ = "1.0.0"

__all__ = [
    # Core
    "Observer",
    "DepnetError",
    "SpaceError",
    "EmptyDatasetError",
    "UndefinedRowError",
    "CycleError",
    "ConvergenceError",
    "FormatError",
    "VarSpace",
    "JointTable",
    "Dataset",
    "empirical_distribution",
    "kl_divergence",
    # Models
    "Cpt",
    "SelectionWeights",
    "DependencyNetwork",
    "BayesianNetwork",
    # Learning
    "PenaltyKind",
    "learn",
    "learn_bn",
    "scost",
    "bn_scost",
    # Sampling
    "SelectionMode",
    "SamplerConfig",
    "run",
    "infer",
    "ancestral_sample",
    # Ledger
    "EventEnvelope",
    "EventSource",
    "EventType",
    "EventOrigin",
    "SystemKind",
    "EventStore",
    "MemoryEventStore",
    "JSONEventStore",
    "SQLiteEventStore",
    "IngestAdapter",
    "PipelineIngestAdapter",
]
