# /src/depnet/storage/__init__.py
# Ledger stores and text-format persistence

from .base import EventStore
from .memory_store import MemoryEventStore
from .json_store import JSONEventStore
from .sqlite_store import SQLiteEventStore
from .formats import (
    fmt_prob,
    fmt_report,
    format_dataset,
    parse_dataset,
    format_depnet,
    parse_depnet,
    format_bayesnet,
    parse_bayesnet,
    format_joint,
    parse_joint,
)
from .files import (
    write_text,
    read_text,
    save_dataset,
    load_dataset,
    save_depnet,
    load_depnet,
    save_bayesnet,
    load_bayesnet,
    save_joint,
    load_joint,
)

__all__ = [
    "EventStore",
    "MemoryEventStore",
    "JSONEventStore",
    "SQLiteEventStore",
    "fmt_prob",
    "fmt_report",
    "format_dataset",
    "parse_dataset",
    "format_depnet",
    "parse_depnet",
    "format_bayesnet",
    "parse_bayesnet",
    "format_joint",
    "parse_joint",
    "write_text",
    "read_text",
    "save_dataset",
    "load_dataset",
    "save_depnet",
    "load_depnet",
    "save_bayesnet",
    "load_bayesnet",
    "save_joint",
    "load_joint",
]
