# /src/depnet/events/__init__.py
# Ledger event primitives

from .types import EventType, EventOrigin, SystemKind
from .envelope import EventEnvelope, EventSource, jsonable

__all__ = [
    "EventType",
    "EventOrigin",
    "SystemKind",
    "EventEnvelope",
    "EventSource",
    "jsonable",
]
