# /src/depnet/ingest/base.py
# Abstract IngestAdapter base class

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

from ..observer import Observer
from ..events.envelope import EventEnvelope, EventSource
from ..events.types import EventType, EventOrigin, SystemKind


class IngestAdapter(ABC):
    """Turns one producer's results into a causal chain of ledger events.

    Subclasses only decide which event type, payload and source a raw
    result maps to. The base records it under the adapter's run and
    links it to the previously recorded event.
    """

    def __init__(
        self,
        observer: Observer,
        correlation_id: Optional[str] = None,
        origin: EventOrigin = EventOrigin.PIPELINE
    ):
        self._observer = observer
        self._correlation_id = correlation_id
        self._origin = origin
        self._last_event_id: Optional[str] = None

    @property
    def observer(self) -> Observer:
        return self._observer

    @property
    def correlation_id(self) -> Optional[str]:
        return self._correlation_id

    @property
    def last_event_id(self) -> Optional[str]:
        """ID of the last recorded event; the next one names it as its cause."""
        return self._last_event_id

    def _require_correlation(self, correlation_id: Optional[str]) -> str:
        corr_id = correlation_id or self._correlation_id
        if not corr_id:
            raise ValueError("correlation_id is required")
        return corr_id

    def _source(self, system: Optional[str] = None, dataset: Optional[str] = None) -> EventSource:
        return EventSource(
            origin=self._origin,
            system=SystemKind(system) if system else SystemKind.NONE,
            dataset=dataset
        )

    @abstractmethod
    def _normalize_event(self, raw_event: Any) -> Tuple[EventType, Dict[str, Any], EventSource]:
        """Map a raw result to (event type, payload, source); ValueError if it is not one."""
        pass

    async def record(self, raw_event: Any, correlation_id: Optional[str] = None) -> EventEnvelope:
        corr_id = self._require_correlation(correlation_id)
        event_type, payload, source = self._normalize_event(raw_event)
        event = await self._observer.record(
            event_type=event_type,
            correlation_id=corr_id,
            payload=payload,
            source=source,
            causation_id=self._last_event_id
        )
        self._last_event_id = event.event_id
        return event

    async def warn(self, message: str, **details: Any) -> EventEnvelope:
        """Chained SYSTEM_WARNING through Observer.warn (which also logs it)."""
        event = await self._observer.warn(
            self._require_correlation(None),
            message,
            source=self._source(details.get("system"), details.get("dataset")),
            causation_id=self._last_event_id,
            **details
        )
        self._last_event_id = event.event_id
        return event

    async def run_events(self, *event_types: EventType) -> List[EventEnvelope]:
        """Events recorded so far under this adapter's run."""
        return await self._observer.get_events(self._require_correlation(None), *event_types)
