# /src/depnet/events/envelope.py
# EventEnvelope - the canonical ledger record

import uuid
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from .types import EventType, EventOrigin, SystemKind


def jsonable(value: Any) -> Any:
    """Plain JSON types for a pipeline payload.

    numpy scalars and arrays, tuples and string enums come out of the
    learners and samplers; every store must see the same values so a
    memory ledger and a reloaded file ledger project identically.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


@dataclass(frozen=True)
class EventSource:
    """Which layer recorded the event, about which model family and dataset."""
    origin: EventOrigin
    system: SystemKind = SystemKind.NONE
    dataset: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "origin": self.origin.value,
            "system": self.system.value,
            "dataset": self.dataset
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EventSource":
        return cls(
            origin=EventOrigin(data["origin"]),
            system=SystemKind(data.get("system", SystemKind.NONE.value)),
            dataset=data.get("dataset")
        )


@dataclass(frozen=True)
class EventEnvelope:
    """One append-only ledger entry.

    ``correlation_id`` groups the events of one pipeline run and
    ``causation_id`` points at the event that led to this one. The payload
    holds JSON types only; +inf divergences are kept as floats.
    """
    event_id: str
    event_type: EventType
    timestamp: datetime
    source: EventSource
    correlation_id: str
    payload: Dict[str, Any] = field(default_factory=dict)
    causation_id: Optional[str] = None

    @classmethod
    def create(
        cls,
        event_type: EventType,
        correlation_id: str,
        payload: Dict[str, Any],
        source: Optional[EventSource] = None,
        causation_id: Optional[str] = None
    ) -> "EventEnvelope":
        return cls(
            event_id=str(uuid.uuid4()),
            event_type=EventType(event_type),
            timestamp=datetime.now(),
            source=source or EventSource(origin=EventOrigin.PIPELINE),
            correlation_id=correlation_id,
            payload=jsonable(payload),
            causation_id=causation_id
        )

    @property
    def dataset(self) -> Optional[str]:
        """Dataset name from the source, else from the payload."""
        return self.source.dataset or self.payload.get("dataset")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "event_id": self.event_id,
            "event_type": self.event_type.value,
            "timestamp": self.timestamp.isoformat(),
            "source": self.source.to_dict(),
            "correlation_id": self.correlation_id,
            "payload": self.payload,
            "causation_id": self.causation_id
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EventEnvelope":
        return cls(
            event_id=data["event_id"],
            event_type=EventType(data["event_type"]),
            timestamp=datetime.fromisoformat(data["timestamp"]),
            source=EventSource.from_dict(data["source"]),
            correlation_id=data["correlation_id"],
            payload=data.get("payload", {}),
            causation_id=data.get("causation_id")
        )
