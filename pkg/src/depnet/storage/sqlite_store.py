# /src/depnet/storage/sqlite_store.py
# SQLite ledger with indexed queries (async with aiosqlite)

import json
from datetime import datetime
from typing import Collection, List, Optional

try:
    import aiosqlite
    HAS_AIOSQLITE = True
except ImportError:
    HAS_AIOSQLITE = False

from .base import EventStore
from ..events.envelope import EventEnvelope, EventSource
from ..events.types import EventType, EventOrigin, SystemKind

_SCHEMA = """
    CREATE TABLE IF NOT EXISTS events (
        seq INTEGER PRIMARY KEY AUTOINCREMENT,
        event_id TEXT UNIQUE NOT NULL,
        correlation_id TEXT NOT NULL,
        event_type TEXT NOT NULL,
        recorded_at TEXT NOT NULL,
        causation_id TEXT,
        origin TEXT NOT NULL,
        system TEXT NOT NULL,
        dataset TEXT,
        payload TEXT NOT NULL
    )
"""

_COLUMNS = "event_id, correlation_id, event_type, recorded_at, causation_id, origin, system, dataset, payload"


class SQLiteEventStore(EventStore):
    """Ledger in an append-only ``events`` table.

    The source is flattened into origin, system and dataset columns so a
    run's rows can be inspected with plain SQL. ``seq`` orders every query.

    Requires: aiosqlite (pip install aiosqlite)
    """

    def __init__(self, db_path: str = "./depnet_ledger.db"):
        if not HAS_AIOSQLITE:
            raise ImportError("aiosqlite is required for SQLiteEventStore. Install with: pip install aiosqlite")
        self._db_path = db_path
        self._db = None

    async def initialize(self) -> None:
        self._db = await aiosqlite.connect(self._db_path)
        await self._db.execute(_SCHEMA)
        await self._db.execute("CREATE INDEX IF NOT EXISTS idx_run_type ON events(correlation_id, event_type)")
        await self._db.commit()

    async def close(self) -> None:
        if self._db:
            await self._db.close()
            self._db = None

    async def append(self, event: EventEnvelope) -> None:
        source = event.source
        await self._db.execute(
            f"INSERT INTO events ({_COLUMNS}) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
            (
                event.event_id,
                event.correlation_id,
                event.event_type.value,
                event.timestamp.isoformat(),
                event.causation_id,
                source.origin.value,
                source.system.value,
                source.dataset,
                json.dumps(event.payload)
            )
        )
        await self._db.commit()

    @staticmethod
    def _row_to_event(row) -> EventEnvelope:
        return EventEnvelope(
            event_id=row[0],
            correlation_id=row[1],
            event_type=EventType(row[2]),
            timestamp=datetime.fromisoformat(row[3]),
            causation_id=row[4],
            source=EventSource(origin=EventOrigin(row[5]), system=SystemKind(row[6]), dataset=row[7]),
            payload=json.loads(row[8])
        )

    async def query(
        self,
        correlation_id: str,
        event_types: Optional[Collection[EventType]] = None
    ) -> List[EventEnvelope]:
        where, params = "WHERE correlation_id = ?", [correlation_id]
        if event_types is not None:
            types = [EventType(t).value for t in event_types]
            if not types:
                return []
            where += f" AND event_type IN ({', '.join('?' for _ in types)})"
            params.extend(types)
        cursor = await self._db.execute(f"SELECT {_COLUMNS} FROM events {where} ORDER BY seq", params)
        return [self._row_to_event(row) for row in await cursor.fetchall()]

    async def runs(self) -> List[str]:
        cursor = await self._db.execute(
            "SELECT correlation_id FROM events GROUP BY correlation_id ORDER BY MIN(seq)"
        )
        return [row[0] for row in await cursor.fetchall()]

    async def count(self, correlation_id: Optional[str] = None) -> int:
        if correlation_id is None:
            cursor = await self._db.execute("SELECT COUNT(*) FROM events")
        else:
            cursor = await self._db.execute("SELECT COUNT(*) FROM events WHERE correlation_id = ?", (correlation_id,))
        row = await cursor.fetchone()
        return row[0] if row else 0
