# /src/depnet/projections/report.py
# Comparison and timing reports projected from evaluation events

from typing import Any, Dict, List

from .base import Projection, payloads, to_tsv
from ..events.envelope import EventEnvelope
from ..events.types import EventType

COMPARISON_COLUMNS = (
    "dataset", "n", "N_train", "N_out", "system", "seed", "kl_train", "kl_output", "evaluations",
)

TIMING_COLUMNS = ("dataset", "system", "seed", "evaluations", "learn_ms", "sample_ms")


def _sorted_rows(events: List[EventEnvelope]) -> List[Dict[str, Any]]:
    rows = payloads(events, EventType.EVALUATION_RECORDED)
    return sorted(rows, key=lambda r: (r["dataset"], r["system"], r["seed"]))


class ComparisonProjection(Projection[str]):
    """KL(p̃*‖p*), KL(π̃‖p*) and evaluation counts per (dataset, system, seed).

    Holds no timings, so reruns with the same seeds give the same bytes.
    """

    def project(self, events: List[EventEnvelope]) -> str:
        return to_tsv(COMPARISON_COLUMNS, _sorted_rows(events))


class TimingProjection(Projection[str]):
    """Median learning time and output sampling time per cell, in ms."""

    def project(self, events: List[EventEnvelope]) -> str:
        return to_tsv(TIMING_COLUMNS, _sorted_rows(events))
