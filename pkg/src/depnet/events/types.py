# /src/depnet/events/types.py
# Event type definitions for the run ledger

from enum import Enum


class EventType(str, Enum):
    """Facts recorded while a pipeline runs.

    Reports are projections of these events; the numbers a report prints
    live in the payloads.
    """

    # Pipeline lifecycle
    PIPELINE_STARTED = "pipeline.started"
    PIPELINE_COMPLETED = "pipeline.completed"

    # Data and models
    DATA_SAMPLED = "data.sampled"
    MODEL_LEARNED = "model.learned"
    OUTPUT_SAMPLED = "output.sampled"

    # Measurements
    EVALUATION_RECORDED = "evaluation.recorded"
    EVALUATION_NODE = "evaluation.node"
    VERIFICATION_TRIAL = "verification.trial"

    # Anomalies
    SYSTEM_WARNING = "system.warning"
    SYSTEM_ERROR = "system.error"


class EventOrigin(str, Enum):
    """Which layer produced the event."""
    PIPELINE = "pipeline"
    CLI = "cli"
    VERIFIER = "verifier"


class SystemKind(str, Enum):
    """The model family an event is about."""
    DN = "DN"
    BN = "BN"
    TRUTH = "truth"
    NONE = "none"
