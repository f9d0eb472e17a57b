# /src/depnet/storage/base.py
# Abstract EventStore base class (async-first)

from abc import ABC, abstractmethod
from typing import Collection, Iterable, List, Optional

from ..events.envelope import EventEnvelope
from ..events.types import EventType


class EventStore(ABC):
    """Append-only async storage for ledger events.

    One store may hold many pipeline runs, each keyed by its correlation_id.
    Queries return events in recording order.
    """

    @abstractmethod
    async def initialize(self) -> None:
        """Prepare the storage (create tables, files, etc.)."""
        pass

    @abstractmethod
    async def close(self) -> None:
        pass

    @abstractmethod
    async def append(self, event: EventEnvelope) -> None:
        pass

    @abstractmethod
    async def query(
        self,
        correlation_id: str,
        event_types: Optional[Collection[EventType]] = None
    ) -> List[EventEnvelope]:
        """Events of one pipeline run, optionally only the given types."""
        pass

    @abstractmethod
    async def runs(self) -> List[str]:
        """Correlation ids in the order their first event was recorded."""
        pass

    @abstractmethod
    async def count(self, correlation_id: Optional[str] = None) -> int:
        pass

    @staticmethod
    def _filter(
        events: Iterable[EventEnvelope],
        correlation_id: Optional[str] = None,
        event_types: Optional[Collection[EventType]] = None
    ) -> List[EventEnvelope]:
        return [
            e for e in events
            if (correlation_id is None or e.correlation_id == correlation_id)
            and (event_types is None or e.event_type in event_types)
        ]

    @staticmethod
    def _first_seen(events: Iterable[EventEnvelope]) -> List[str]:
        return list(dict.fromkeys(e.correlation_id for e in events))

    async def __aenter__(self):
        await self.initialize()
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        await self.close()
