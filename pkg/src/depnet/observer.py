# /src/depnet/observer.py
# Observer - records pipeline facts to the ledger and fans them out to subscribers

import asyncio
import logging
import uuid
from dataclasses import dataclass
from typing import Any, Awaitable, Callable, Dict, FrozenSet, List, Optional

from .events.envelope import EventEnvelope, EventSource
from .events.types import EventType, EventOrigin
from .storage.base import EventStore


SubscriptionCallback = Callable[[EventEnvelope], Awaitable[None]]


@dataclass(frozen=True)
class _Subscription:
    callback: SubscriptionCallback
    event_types: Optional[FrozenSet[EventType]]

    def wants(self, event: EventEnvelope) -> bool:
        return self.event_types is None or event.event_type in self.event_types


class Observer:
    """Front door of the run ledger.

    Every pipeline stage reports what it did through ``record``; the
    event is appended to the EventStore and then handed to the matching
    subscribers. Reports are built later by projecting a run's events.
    """

    def __init__(self, event_store: EventStore):
        self._store = event_store
        self._subscriptions: Dict[str, _Subscription] = {}
        self._logger = logging.getLogger(__name__)

    @property
    def store(self) -> EventStore:
        return self._store

    @staticmethod
    def new_run(command: str) -> str:
        """Fresh correlation id for one pipeline run, e.g. ``compare-3f2a9c0d41b7``."""
        return f"{command}-{uuid.uuid4().hex[:12]}"

    # ========== Recording ==========

    async def record(
        self,
        event_type: EventType,
        correlation_id: str,
        payload: Dict[str, Any],
        source: Optional[EventSource] = None,
        causation_id: Optional[str] = None
    ) -> EventEnvelope:
        """Record an event and notify subscribers.

        Args:
            event_type: The type of event
            correlation_id: The pipeline run the event belongs to
            payload: Event data; numpy values and tuples are converted
            source: Where the event originated (default: pipeline)
            causation_id: The event that caused this one (optional)

        Returns:
            The created EventEnvelope
        """
        event = EventEnvelope.create(
            event_type=event_type,
            correlation_id=correlation_id,
            payload=payload,
            source=source or EventSource(origin=EventOrigin.PIPELINE),
            causation_id=causation_id
        )
        await self._store.append(event)
        self._logger.debug(f"{correlation_id}: {event.event_type.value}")
        await self._notify_subscribers(event)
        return event

    async def warn(
        self,
        correlation_id: str,
        message: str,
        source: Optional[EventSource] = None,
        causation_id: Optional[str] = None,
        **details: Any
    ) -> EventEnvelope:
        """Log a warning and keep it in the ledger as a SYSTEM_WARNING event."""
        self._logger.warning(message)
        return await self.record(
            EventType.SYSTEM_WARNING,
            correlation_id,
            {"message": message, **details},
            source=source,
            causation_id=causation_id
        )

    # ========== Querying ==========

    async def get_events(self, correlation_id: str, *event_types: EventType) -> List[EventEnvelope]:
        """Events of one run in recording order, optionally only the given types."""
        return await self._store.query(correlation_id, frozenset(event_types) if event_types else None)

    async def runs(self) -> List[str]:
        return await self._store.runs()

    async def count(self, correlation_id: Optional[str] = None) -> int:
        return await self._store.count(correlation_id)

    # ========== Subscriptions ==========

    def subscribe(self, callback: SubscriptionCallback, *event_types: EventType) -> str:
        """Call ``callback`` for each new event, or only for the listed types.

        Returns:
            Subscription ID (use to unsubscribe)
        """
        subscription_id = str(uuid.uuid4())
        types = frozenset(event_types) if event_types else None
        self._subscriptions[subscription_id] = _Subscription(callback, types)
        return subscription_id

    def unsubscribe(self, subscription_id: str) -> bool:
        """Returns True if the subscription existed."""
        return self._subscriptions.pop(subscription_id, None) is not None

    async def _notify_subscribers(self, event: EventEnvelope) -> None:
        targets = [
            (sub_id, sub.callback)
            for sub_id, sub in list(self._subscriptions.items())
            if sub.wants(event)
        ]
        if targets:
            await asyncio.gather(*(self._safe_callback(sub_id, cb, event) for sub_id, cb in targets))

    async def _safe_callback(
        self,
        subscription_id: str,
        callback: SubscriptionCallback,
        event: EventEnvelope
    ) -> None:
        """A failing subscriber is logged and never breaks recording."""
        try:
            await callback(event)
        except Exception as e:
            self._logger.error(f"Subscription {subscription_id} callback failed: {e}")

    # ========== Lifecycle ==========

    async def initialize(self) -> None:
        await self._store.initialize()

    async def close(self) -> None:
        self._subscriptions.clear()
        await self._store.close()

    async def __aenter__(self):
        await self.initialize()
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        await self.close()
