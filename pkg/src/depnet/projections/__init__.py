# /src/depnet/projections/__init__.py
# Reports derived from the run ledger

from .base import Projection, payloads, to_tsv
from .report import ComparisonProjection, TimingProjection, COMPARISON_COLUMNS, TIMING_COLUMNS
from .nodes import (
    NodeTableProjection,
    GeneralizationProjection,
    GeneralizationReportProjection,
    NODE_COLUMNS,
    GENERALIZATION_COLUMNS,
)
from .verification import VerificationProjection, VerificationSummaryProjection, VERIFICATION_COLUMNS
from .run_log import RunLogProjection

__all__ = [
    "Projection",
    "payloads",
    "to_tsv",
    "ComparisonProjection",
    "TimingProjection",
    "COMPARISON_COLUMNS",
    "TIMING_COLUMNS",
    "NodeTableProjection",
    "GeneralizationProjection",
    "GeneralizationReportProjection",
    "NODE_COLUMNS",
    "GENERALIZATION_COLUMNS",
    "VerificationProjection",
    "VerificationSummaryProjection",
    "VERIFICATION_COLUMNS",
    "RunLogProjection",
]
