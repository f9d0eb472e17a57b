# /src/depnet/storage/memory_store.py
# In-memory EventStore, the default ledger when no --ledger path is given

from typing import Collection, List, Optional

from .base import EventStore
from ..events.envelope import EventEnvelope
from ..events.types import EventType


class MemoryEventStore(EventStore):
    """Ledger held in a list; lost when the process exits."""

    def __init__(self):
        self._events: List[EventEnvelope] = []

    async def initialize(self) -> None:
        pass

    async def close(self) -> None:
        pass

    async def append(self, event: EventEnvelope) -> None:
        self._events.append(event)

    async def query(
        self,
        correlation_id: str,
        event_types: Optional[Collection[EventType]] = None
    ) -> List[EventEnvelope]:
        return self._filter(self._events, correlation_id, event_types)

    async def runs(self) -> List[str]:
        return self._first_seen(self._events)

    async def count(self, correlation_id: Optional[str] = None) -> int:
        if correlation_id is None:
            return len(self._events)
        return len(self._filter(self._events, correlation_id))

    def clear(self) -> None:
        """Drop every event (tests reuse one store)."""
        self._events.clear()
