# /src/depnet/ingest/pipeline.py
# Ingest adapter for the evaluation pipelines (compare, verify, CLI steps)

from typing import Any, Dict, Tuple

from .base import IngestAdapter
from ..events.envelope import EventEnvelope, EventSource
from ..events.types import EventType, SystemKind

# Payload "kind" values accepted by record().
_KINDS = {
    "started": EventType.PIPELINE_STARTED,
    "completed": EventType.PIPELINE_COMPLETED,
    "data": EventType.DATA_SAMPLED,
    "model": EventType.MODEL_LEARNED,
    "output": EventType.OUTPUT_SAMPLED,
    "evaluation": EventType.EVALUATION_RECORDED,
    "node": EventType.EVALUATION_NODE,
    "verification": EventType.VERIFICATION_TRIAL,
    "warning": EventType.SYSTEM_WARNING,
    "error": EventType.SYSTEM_ERROR,
}


class PipelineIngestAdapter(IngestAdapter):
    """Records pipeline results as ledger events.

    Raw events are dicts with a ``kind`` key (see ``_KINDS``) plus the
    payload; optional ``system`` and ``dataset`` keys fill the source.
    """

    def _normalize_event(self, raw_event: Any) -> Tuple[EventType, Dict[str, Any], EventSource]:
        if not isinstance(raw_event, dict):
            raise ValueError(f"pipeline events are dicts; got {type(raw_event).__name__}")
        payload = dict(raw_event)
        kind = payload.pop("kind", None)
        if kind not in _KINDS:
            raise ValueError(f"unknown pipeline event kind: {kind!r}")
        return _KINDS[kind], payload, self._source(payload.get("system"), payload.get("dataset"))

    async def started(self, command: str, settings: Dict[str, Any]) -> EventEnvelope:
        return await self.record({"kind": "started", "command": command, "settings": settings})

    async def completed(self, command: str, **summary: Any) -> EventEnvelope:
        return await self.record({"kind": "completed", "command": command, **summary})

    async def on_data(self, dataset: str, N: int, **details: Any) -> EventEnvelope:
        """Training data drawn from a ground truth."""
        return await self.record({"kind": "data", "dataset": dataset, "N": N, "system": SystemKind.TRUTH, **details})

    async def on_model(self, dataset: str, system: SystemKind, **details: Any) -> EventEnvelope:
        return await self.record({"kind": "model", "dataset": dataset, "system": system, **details})

    async def on_output(self, dataset: str, system: SystemKind, seed: int, **details: Any) -> EventEnvelope:
        return await self.record({"kind": "output", "dataset": dataset, "system": system, "seed": seed, **details})

    async def on_row(self, kind: str, row: Dict[str, Any]) -> EventEnvelope:
        """Record a report row (``evaluation``, ``node`` or ``verification``)."""
        return await self.record({"kind": kind, **row})

    async def on_warning(self, message: str, **details: Any) -> EventEnvelope:
        return await self.warn(message, **details)

    async def on_error(self, command: str, error: BaseException) -> EventEnvelope:
        """A command that stopped on an exception; the caller still reports it."""
        return await self.record({
            "kind": "error",
            "command": command,
            "message": f"{command} failed: {error}",
            "error": type(error).__name__,
        })
