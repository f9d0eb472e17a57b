# /src/depnet/ingest/__init__.py
# Ingest adapters that turn pipeline results into ledger events

from .base import IngestAdapter
from .pipeline import PipelineIngestAdapter

__all__ = [
    "IngestAdapter",
    "PipelineIngestAdapter",
]
