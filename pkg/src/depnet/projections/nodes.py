# /src/depnet/projections/nodes.py
# Per-node learning behaviour and its weighted averages

import math
from itertools import groupby
from typing import Any, Dict, List, Tuple

from .base import Projection, payloads, to_tsv
from ..events.envelope import EventEnvelope
from ..events.types import EventType

NODE_COLUMNS = ("dataset", "node", "inputs", "weight", "entropy", "cond_entropy", "kl_data", "kl_true")
GENERALIZATION_COLUMNS = ("dataset", "nodes", "generalizing", "rate")


class NodeTableProjection(Projection[str]):
    """One line per node; each dataset ends with an ``avg`` line holding Σ_i c_i·KL."""

    def project(self, events: List[EventEnvelope]) -> str:
        rows = sorted(
            payloads(events, EventType.EVALUATION_NODE),
            key=lambda r: (r["dataset"], r["node"]),
        )
        lines: List[Dict[str, Any]] = []
        for dataset, group in groupby(rows, key=lambda r: r["dataset"]):
            group = list(group)
            lines.extend(group)
            lines.append({
                "dataset": dataset,
                "node": "avg",
                "inputs": "-",
                "weight": math.fsum(r["weight"] for r in group),
                "entropy": "-",
                "cond_entropy": "-",
                "kl_data": math.fsum(r["weight"] * r["kl_data"] for r in group),
                "kl_true": math.fsum(r["weight"] * r["kl_true"] for r in group),
            })
        return to_tsv(NODE_COLUMNS, lines)


def _generalization_counts(events: List[EventEnvelope]) -> Dict[str, Tuple[int, int]]:
    """dataset → (nodes with KL(p̃*‖E(θ_i)) ≥ KL(p*‖E(θ_i)), nodes)."""
    counts: Dict[str, List[int]] = {}
    for row in payloads(events, EventType.EVALUATION_NODE):
        hits = counts.setdefault(row["dataset"], [0, 0])
        hits[0] += row["kl_data"] >= row["kl_true"]
        hits[1] += 1
    return {dataset: (hit, total) for dataset, (hit, total) in sorted(counts.items())}


class GeneralizationProjection(Projection[Dict[str, float]]):
    """Share of nodes per dataset where KL(p̃*‖E(θ_i)) ≥ KL(p*‖E(θ_i))."""

    def project(self, events: List[EventEnvelope]) -> Dict[str, float]:
        return {dataset: hit / total for dataset, (hit, total) in _generalization_counts(events).items()}


class GeneralizationReportProjection(Projection[str]):
    """The generalization rate per dataset as a TSV report."""

    def project(self, events: List[EventEnvelope]) -> str:
        rows = [
            {"dataset": dataset, "nodes": total, "generalizing": hit, "rate": hit / total}
            for dataset, (hit, total) in _generalization_counts(events).items()
        ]
        return to_tsv(GENERALIZATION_COLUMNS, rows)
