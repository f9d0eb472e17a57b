# /src/depnet/projections/run_log.py
# RunLogProjection - readable account of a pipeline run

from typing import List, Optional

from .base import Projection
from ..events.envelope import EventEnvelope
from ..events.types import EventType
from ..storage.formats import fmt_report


class RunLogProjection(Projection[str]):
    """One line per ledger event, for humans.

    Report rows (node and verification) are folded into counts unless
    ``include_rows`` is set.
    """

    def __init__(self, include_timestamps: bool = True, include_rows: bool = False, timestamp_format: str = "%H:%M:%S"):
        self.include_timestamps = include_timestamps
        self.include_rows = include_rows
        self.timestamp_format = timestamp_format

    def project(self, events: List[EventEnvelope]) -> str:
        if not events:
            return ""
        lines = [
            f"=== Run: {events[0].correlation_id} ===",
            f"Events: {len(events)}",
            f"Start: {events[0].timestamp.isoformat()}",
            f"End: {events[-1].timestamp.isoformat()}",
            "",
        ]
        folded = 0
        for event in events:
            line = self._format_event(event)
            if line is None:
                folded += 1
            else:
                lines.append(line)
        if folded:
            lines.append(f"({folded} report rows not shown)")
        lines.append("=== End Run ===")
        return "\n".join(lines) + "\n"

    def _format_event(self, event: EventEnvelope) -> Optional[str]:
        stamp = f"[{event.timestamp.strftime(self.timestamp_format)}] " if self.include_timestamps else ""
        p = event.payload
        who = event.dataset or "-"
        system = event.source.system.value

        if event.event_type == EventType.PIPELINE_STARTED:
            return f"{stamp}[STARTED] {p.get('command', '?')}"
        if event.event_type == EventType.PIPELINE_COMPLETED:
            return f"{stamp}[COMPLETED] {p.get('command', '?')}"
        if event.event_type == EventType.DATA_SAMPLED:
            kl = p.get("kl_train")
            suffix = f", KL(data||truth) {fmt_report(kl)}" if kl is not None else ""
            return f"{stamp}{who}: sampled N={p.get('N')}{suffix}"
        if event.event_type == EventType.MODEL_LEARNED:
            ms = p.get("learn_ms")
            timing = f" in {fmt_report(ms)} ms" if ms is not None else ""
            return f"{stamp}{who}: learned {system} with {p.get('evaluations')} evaluations{timing}"
        if event.event_type == EventType.OUTPUT_SAMPLED:
            return f"{stamp}{who}: {system} drew {p.get('N')} outputs (seed {p.get('seed')})"
        if event.event_type == EventType.EVALUATION_RECORDED:
            return f"{stamp}{who}: {system} seed {p.get('seed')} KL(out||truth) {fmt_report(p['kl_output'])}"
        if event.event_type in (EventType.SYSTEM_WARNING, EventType.SYSTEM_ERROR):
            return f"{stamp}[{event.event_type.value.split('.')[-1].upper()}] {p.get('message', '')}"
        if self.include_rows:
            return f"{stamp}[{event.event_type.value}] {p}"
        return None
