# /src/depnet/projections/base.py
# Abstract Projection base class

from abc import ABC, abstractmethod
from typing import Any, Dict, Generic, Iterable, List, Sequence, TypeVar

from ..events.envelope import EventEnvelope
from ..events.types import EventType
from ..storage.formats import fmt_report

T = TypeVar("T")


class Projection(ABC, Generic[T]):
    """Derives a view from a list of ledger events.

    Projections are pure: they never modify the events. Reports such as
    the comparison TSV are projections of the ledger of a run.
    """

    @abstractmethod
    def project(self, events: List[EventEnvelope]) -> T:
        """Project events into the target format.

        Args:
            events: List of EventEnvelopes in recording order

        Returns:
            The projected output
        """
        pass

    def __call__(self, events: List[EventEnvelope]) -> T:
        return self.project(events)


def payloads(events: Iterable[EventEnvelope], event_type: EventType) -> List[Dict[str, Any]]:
    """Payloads of every event of one type, in recording order."""
    return [e.payload for e in events if e.event_type == event_type]


def tsv_cell(value: Any) -> str:
    """Integers verbatim, floats with 6 significant digits, lists comma-joined."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_report(value)
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value) or "-"
    return str(value)


def to_tsv(columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
    """Header row plus one line per row; always newline-terminated."""
    lines = ["\t".join(columns)]
    lines.extend("\t".join(tsv_cell(row[c]) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"
