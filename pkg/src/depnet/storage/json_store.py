# /src/depnet/storage/json_store.py
# JSON Lines ledger on disk (async with aiofiles)

import asyncio
import json
from pathlib import Path
from typing import Collection, List, Optional

try:
    import aiofiles
    import aiofiles.os
    HAS_AIOFILES = True
except ImportError:
    HAS_AIOFILES = False

from .base import EventStore
from ..events.envelope import EventEnvelope
from ..events.types import EventType


class JSONEventStore(EventStore):
    """Ledger stored as ``events.jsonl`` inside a directory, one event per line.

    Successive CLI invocations append to the same file, so the directory
    accumulates one run per command. Appends are serialized with a lock
    so concurrent pipeline cells never interleave partial lines.

    Requires: aiofiles (pip install aiofiles)
    """

    FILENAME = "events.jsonl"

    def __init__(self, storage_dir: str = "./depnet_ledger"):
        if not HAS_AIOFILES:
            raise ImportError("aiofiles is required for JSONEventStore. Install with: pip install aiofiles")
        self._storage_dir = Path(storage_dir)
        self._events_file = self._storage_dir / self.FILENAME
        self._lock = asyncio.Lock()

    @property
    def path(self) -> Path:
        return self._events_file

    async def initialize(self) -> None:
        await aiofiles.os.makedirs(self._storage_dir, exist_ok=True)

    async def close(self) -> None:
        pass

    async def append(self, event: EventEnvelope) -> None:
        line = json.dumps(event.to_dict()) + "\n"
        async with self._lock:
            async with aiofiles.open(self._events_file, "a") as f:
                await f.write(line)

    async def _read(self) -> List[EventEnvelope]:
        if not await aiofiles.os.path.exists(self._events_file):
            return []
        events = []
        async with aiofiles.open(self._events_file, "r") as f:
            async for line in f:
                if line.strip():
                    events.append(EventEnvelope.from_dict(json.loads(line)))
        return events

    async def query(
        self,
        correlation_id: str,
        event_types: Optional[Collection[EventType]] = None
    ) -> List[EventEnvelope]:
        return self._filter(await self._read(), correlation_id, event_types)

    async def runs(self) -> List[str]:
        return self._first_seen(await self._read())

    async def count(self, correlation_id: Optional[str] = None) -> int:
        return len(self._filter(await self._read(), correlation_id))
