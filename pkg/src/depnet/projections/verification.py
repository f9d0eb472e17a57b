# /src/depnet/projections/verification.py
# Verification trials as a TSV and a per-check summary

from typing import Dict, List, Tuple

from .base import Projection, payloads, to_tsv
from ..events.envelope import EventEnvelope
from ..events.types import EventType

VERIFICATION_COLUMNS = ("check", "trial", "n", "value", "tolerance", "passed")


class VerificationProjection(Projection[str]):
    def project(self, events: List[EventEnvelope]) -> str:
        rows = payloads(events, EventType.VERIFICATION_TRIAL)
        return to_tsv(VERIFICATION_COLUMNS, rows)


class VerificationSummaryProjection(Projection[Dict[str, Tuple[int, int, float]]]):
    """check -> (passed trials, total trials, worst value)."""

    def project(self, events: List[EventEnvelope]) -> Dict[str, Tuple[int, int, float]]:
        summary: Dict[str, Tuple[int, int, float]] = {}
        for row in payloads(events, EventType.VERIFICATION_TRIAL):
            passed, total, worst = summary.get(row["check"], (0, 0, 0.0))
            summary[row["check"]] = (passed + bool(row["passed"]), total + 1, max(worst, row["value"]))
        return summary
