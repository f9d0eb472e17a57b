# /tests/test_observer.py
# Tests for the run ledger: envelopes, stores, Observer, ingest adapter, projections

import dataclasses

import numpy as np
import pytest

from depnet import (
    Observer,
    EventEnvelope,
    EventSource,
    EventType,
    EventOrigin,
    SystemKind,
    MemoryEventStore,
    JSONEventStore,
    SQLiteEventStore,
    PipelineIngestAdapter,
)
from depnet.events import jsonable
from depnet.config import open_store
from depnet.projections import (
    ComparisonProjection,
    TimingProjection,
    NodeTableProjection,
    GeneralizationProjection,
    GeneralizationReportProjection,
    VerificationProjection,
    VerificationSummaryProjection,
    RunLogProjection,
)


def _evaluation(dataset, system, seed, kl_output=0.1):
    return {
        "dataset": dataset,
        "n": 3,
        "N_train": 1000,
        "N_out": 1000,
        "system": system,
        "seed": seed,
        "kl_train": 0.01,
        "kl_output": kl_output,
        "evaluations": 7,
        "learn_ms": 1.5,
        "sample_ms": 2.5,
    }


# ========== EventEnvelope Tests ==========

class TestEventEnvelope:
    def test_create_event(self):
        """create() fills id, timestamp and a pipeline source."""
        event = EventEnvelope.create(
            event_type=EventType.DATA_SAMPLED,
            correlation_id="run_001",
            payload={"N": 1000}
        )

        assert event.event_id is not None
        assert event.event_type == EventType.DATA_SAMPLED
        assert event.correlation_id == "run_001"
        assert event.payload == {"N": 1000}
        assert event.source.origin == EventOrigin.PIPELINE
        assert event.source.system == SystemKind.NONE
        assert event.causation_id is None

    def test_event_with_source(self):
        """Source carries origin, system and dataset."""
        source = EventSource(origin=EventOrigin.CLI, system=SystemKind.DN, dataset="BN12-20S")
        event = EventEnvelope.create(
            event_type=EventType.MODEL_LEARNED,
            correlation_id="run_001",
            payload={"evaluations": 12},
            source=source
        )

        assert event.source.origin == EventOrigin.CLI
        assert event.source.system == SystemKind.DN
        assert event.source.dataset == "BN12-20S"

    def test_event_serialization(self):
        """to_dict() and from_dict() agree."""
        event = EventEnvelope.create(
            event_type=EventType.EVALUATION_RECORDED,
            correlation_id="run_001",
            payload=_evaluation("Ising4x4S", "BN", 2),
            source=EventSource(origin=EventOrigin.PIPELINE, system=SystemKind.BN, dataset="Ising4x4S")
        )

        restored = EventEnvelope.from_dict(event.to_dict())

        assert restored.event_id == event.event_id
        assert restored.event_type == event.event_type
        assert restored.timestamp == event.timestamp
        assert restored.source == event.source
        assert restored.payload == event.payload

    def test_payload_made_jsonable(self):
        """numpy values, tuples and enums become plain JSON types."""
        payload = {
            "inputs": (np.int64(1), 2),
            "kl": np.float64(0.5),
            "probs": np.array([0.25, 0.75]),
            "system": SystemKind.DN,
            "per_node": [np.int32(3)],
        }
        event = EventEnvelope.create(EventType.MODEL_LEARNED, "run", payload)

        assert event.payload == {"inputs": [1, 2], "kl": 0.5, "probs": [0.25, 0.75], "system": "DN", "per_node": [3]}
        assert type(event.payload["inputs"][0]) is int
        assert jsonable({1: float("inf")}) == {"1": float("inf")}

    def test_envelope_is_immutable(self):
        event = EventEnvelope.create(EventType.DATA_SAMPLED, "run", {"N": 1})
        with pytest.raises(dataclasses.FrozenInstanceError):
            event.correlation_id = "other"

    def test_dataset_falls_back_to_payload(self):
        event = EventEnvelope.create(EventType.EVALUATION_NODE, "run", {"dataset": "Ising4x4L"})
        assert event.dataset == "Ising4x4L"


# ========== Store Tests ==========

class TestMemoryEventStore:
    @pytest.mark.asyncio
    async def test_append_and_query(self):
        """Events come back per run in recording order."""
        store = MemoryEventStore()
        await store.initialize()
        for k in range(3):
            await store.append(EventEnvelope.create(EventType.OUTPUT_SAMPLED, "run_a", {"seed": k}))
        await store.append(EventEnvelope.create(EventType.OUTPUT_SAMPLED, "run_b", {"seed": 9}))

        events = await store.query("run_a")
        assert [e.payload["seed"] for e in events] == [0, 1, 2]
        assert await store.runs() == ["run_a", "run_b"]
        assert await store.count() == 4
        assert await store.count("run_b") == 1

    @pytest.mark.asyncio
    async def test_query_by_types(self):
        """An event-type filter keeps recording order within the run."""
        async with MemoryEventStore() as store:
            await store.append(EventEnvelope.create(EventType.DATA_SAMPLED, "run", {"N": 10}))
            await store.append(EventEnvelope.create(EventType.MODEL_LEARNED, "run", {"evaluations": 3}))
            await store.append(EventEnvelope.create(EventType.OUTPUT_SAMPLED, "run", {"N": 5}))

            events = await store.query("run", {EventType.OUTPUT_SAMPLED, EventType.DATA_SAMPLED})
            assert [e.event_type for e in events] == [EventType.DATA_SAMPLED, EventType.OUTPUT_SAMPLED]
            assert await store.query("run", set()) == []

    @pytest.mark.asyncio
    async def test_clear(self):
        """clear() empties the ledger."""
        async with MemoryEventStore() as store:
            await store.append(EventEnvelope.create(EventType.DATA_SAMPLED, "run", {}))
            store.clear()
            assert await store.count() == 0


class TestFileStores:
    @pytest.mark.asyncio
    async def test_json_store_persists(self, tmp_path):
        """A reopened JSON ledger holds the same events in the same order."""
        directory = str(tmp_path / "ledger")
        async with JSONEventStore(directory) as store:
            for k in range(3):
                await store.append(EventEnvelope.create(EventType.EVALUATION_RECORDED, "run", {"seed": k}))

        async with JSONEventStore(directory) as store:
            events = await store.query("run")
            assert [e.payload["seed"] for e in events] == [0, 1, 2]
            assert await store.count() == 3

    @pytest.mark.asyncio
    async def test_sqlite_store_persists(self, tmp_path):
        """A reopened SQLite ledger holds the same events in the same order."""
        path = str(tmp_path / "ledger.db")
        async with SQLiteEventStore(path) as store:
            for k in range(3):
                await store.append(EventEnvelope.create(EventType.EVALUATION_RECORDED, "run", {"seed": k}))
            await store.append(EventEnvelope.create(
                EventType.SYSTEM_WARNING, "run", {"message": "x"},
                source=EventSource(EventOrigin.CLI, SystemKind.BN, "Ising4x4S")
            ))
            await store.append(EventEnvelope.create(EventType.DATA_SAMPLED, "other", {"N": 1}))

        async with SQLiteEventStore(path) as store:
            events = await store.query("run", [EventType.EVALUATION_RECORDED])
            assert [e.payload["seed"] for e in events] == [0, 1, 2]
            warning = (await store.query("run", [EventType.SYSTEM_WARNING]))[0]
            assert warning.source == EventSource(EventOrigin.CLI, SystemKind.BN, "Ising4x4S")
            assert await store.runs() == ["run", "other"]
            assert await store.count() == 5
            assert await store.count("run") == 4

    @pytest.mark.asyncio
    async def test_json_store_accumulates_runs(self, tmp_path):
        """Each reopening appends; runs() lists them in first-seen order."""
        directory = str(tmp_path / "ledger")
        for run in ("learn-dn-1", "sample-2"):
            async with JSONEventStore(directory) as store:
                await store.append(EventEnvelope.create(EventType.PIPELINE_STARTED, run, {"command": run}))
        async with JSONEventStore(directory) as store:
            assert await store.runs() == ["learn-dn-1", "sample-2"]
            assert await store.count("sample-2") == 1

    @pytest.mark.asyncio
    async def test_fresh_json_store_is_empty(self, tmp_path):
        async with JSONEventStore(str(tmp_path / "empty")) as store:
            assert await store.count() == 0
            assert await store.runs() == []

    def test_open_store_by_path(self, tmp_path):
        """No path is memory, *.db is SQLite, anything else JSON."""
        assert isinstance(open_store(None), MemoryEventStore)
        assert isinstance(open_store(str(tmp_path / "run.db")), SQLiteEventStore)
        assert isinstance(open_store(str(tmp_path / "ledger")), JSONEventStore)


# ========== Observer Tests ==========

class TestObserver:
    @pytest.mark.asyncio
    async def test_get_events(self):
        """Events are grouped by correlation_id."""
        async with Observer(MemoryEventStore()) as observer:
            await observer.record(EventType.DATA_SAMPLED, "run_001", {"N": 10})
            await observer.record(EventType.MODEL_LEARNED, "run_001", {"evaluations": 3})
            await observer.record(EventType.DATA_SAMPLED, "run_002", {"N": 20})

            events = await observer.get_events("run_001")
            assert len(events) == 2
            assert await observer.count() == 3
            assert await observer.count("run_002") == 1
            assert await observer.runs() == ["run_001", "run_002"]

            learned = await observer.get_events("run_001", EventType.MODEL_LEARNED)
            assert [e.payload for e in learned] == [{"evaluations": 3}]

    def test_new_run_ids(self):
        """Run ids name the command and never repeat."""
        first, second = Observer.new_run("compare"), Observer.new_run("compare")
        assert first.startswith("compare-")
        assert first != second

    @pytest.mark.asyncio
    async def test_typed_subscription(self):
        """A subscription with event types only sees those types."""
        seen = []

        async def on_evaluation(event):
            seen.append(event.payload["kl_output"])

        async with Observer(MemoryEventStore()) as observer:
            observer.subscribe(on_evaluation, EventType.EVALUATION_RECORDED)
            await observer.record(EventType.DATA_SAMPLED, "run", {"N": 10})
            await observer.record(EventType.EVALUATION_RECORDED, "run", _evaluation("d", "DN", 0, 0.25))
            await observer.record(EventType.OUTPUT_SAMPLED, "run", {"N": 10})

        assert seen == [0.25]

    @pytest.mark.asyncio
    async def test_subscription(self):
        """Subscribers see each event until they unsubscribe."""
        received = []

        async def callback(event):
            received.append(event)

        async with Observer(MemoryEventStore()) as observer:
            sub_id = observer.subscribe(callback)
            await observer.record(EventType.DATA_SAMPLED, "run", {"N": 10})
            assert len(received) == 1

            assert observer.unsubscribe(sub_id)
            await observer.record(EventType.DATA_SAMPLED, "run", {"N": 20})
            assert len(received) == 1

    @pytest.mark.asyncio
    async def test_failing_subscriber_does_not_break_recording(self):
        """A raising callback is logged; the event is still stored."""
        async def broken(event):
            raise RuntimeError("boom")

        async with Observer(MemoryEventStore()) as observer:
            observer.subscribe(broken)
            await observer.record(EventType.DATA_SAMPLED, "run", {"N": 10})
            assert await observer.count() == 1

    @pytest.mark.asyncio
    async def test_warn_logs_and_records(self, caplog):
        """warn() writes a warning log line and a SYSTEM_WARNING event."""
        async with Observer(MemoryEventStore()) as observer:
            event = await observer.warn("run", "outputs leave the support", dataset="BN12-20S")

            assert event.event_type == EventType.SYSTEM_WARNING
            assert event.payload == {"message": "outputs leave the support", "dataset": "BN12-20S"}
            assert "outputs leave the support" in caplog.text


# ========== Ingest Adapter Tests ==========

class TestPipelineIngestAdapter:
    @pytest.mark.asyncio
    async def test_events_are_chained(self):
        """Each recorded event names the previous one as its cause."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run")
            first = await adapter.started("compare", {"seeds": [0]})
            second = await adapter.on_data("BN12-20S", 1000, kl_train=0.02)
            third = await adapter.on_model("BN12-20S", SystemKind.DN, evaluations=55)

            assert first.causation_id is None
            assert second.causation_id == first.event_id
            assert third.causation_id == second.event_id
            assert adapter.last_event_id == third.event_id

    @pytest.mark.asyncio
    async def test_source_from_payload(self):
        """system and dataset keys of a row fill the event source."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run", origin=EventOrigin.CLI)
            event = await adapter.on_row("evaluation", _evaluation("Ising4x4S", "DN", 0))

            assert event.event_type == EventType.EVALUATION_RECORDED
            assert event.source == EventSource(EventOrigin.CLI, SystemKind.DN, "Ising4x4S")

    @pytest.mark.asyncio
    async def test_unknown_kind_rejected(self):
        """Only the documented kinds are accepted."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run")
            with pytest.raises(ValueError):
                await adapter.record({"kind": "chat", "content": "hi"})
            with pytest.raises(ValueError):
                await adapter.record(["not", "a", "dict"])

    @pytest.mark.asyncio
    async def test_correlation_required(self):
        """Without a correlation_id nothing is recorded."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer)
            with pytest.raises(ValueError):
                await adapter.started("verify-theorems", {})
            assert await observer.count() == 0

    @pytest.mark.asyncio
    async def test_warning_goes_through_observer(self, mocker):
        """on_warning delegates to Observer.warn with the chained cause."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run")
            started = await adapter.started("eval", {})
            spy = mocker.spy(observer, "warn")

            event = await adapter.on_warning("inf KL", dataset="d", system="BN")

            spy.assert_called_once()
            assert event.causation_id == started.event_id
            assert event.source.system == SystemKind.BN

    @pytest.mark.asyncio
    async def test_error_closes_the_chain(self):
        """on_error records a SYSTEM_ERROR naming the command and exception type."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run", origin=EventOrigin.CLI)
            started = await adapter.started("learn-dn", {})
            event = await adapter.on_error("learn-dn", FileNotFoundError("d.txt"))

            assert event.event_type == EventType.SYSTEM_ERROR
            assert event.causation_id == started.event_id
            assert event.payload == {
                "command": "learn-dn",
                "message": "learn-dn failed: d.txt",
                "error": "FileNotFoundError",
            }
            log = RunLogProjection(include_timestamps=False).project(await adapter.run_events())
            assert "[ERROR] learn-dn failed: d.txt" in log


# ========== Projection Tests ==========

class TestReportProjections:
    @pytest.mark.asyncio
    async def test_comparison_sorted_and_timing_free(self):
        """Rows sort by (dataset, system, seed); timings only appear in the timing report."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run")
            await adapter.on_row("evaluation", _evaluation("Ising4x4S", "DN", 1))
            await adapter.on_row("evaluation", _evaluation("BN12-20S", "DN", 0))
            await adapter.on_row("evaluation", _evaluation("BN12-20S", "BN", 0))
            events = await observer.get_events("run")

        lines = ComparisonProjection().project(events).splitlines()
        assert lines[0].split("\t") == [
            "dataset", "n", "N_train", "N_out", "system", "seed", "kl_train", "kl_output", "evaluations",
        ]
        assert [tuple(line.split("\t")[i] for i in (0, 4, 5)) for line in lines[1:]] == [
            ("BN12-20S", "BN", "0"),
            ("BN12-20S", "DN", "0"),
            ("Ising4x4S", "DN", "1"),
        ]
        assert "1.5" not in "\n".join(lines[1:])

        timing = TimingProjection().project(events).splitlines()
        assert timing[0] == "dataset\tsystem\tseed\tevaluations\tlearn_ms\tsample_ms"
        assert timing[1].endswith("1.5\t2.5")

    def test_infinite_kl_printed(self):
        """An output KL of +inf survives into the report."""
        event = EventEnvelope.create(EventType.EVALUATION_RECORDED, "run", _evaluation("d", "BN", 0, float("inf")))
        assert "\tinf\t" in ComparisonProjection()([event])

    def test_node_table_average_line(self):
        """The avg line holds Σ c_i·KL for each dataset."""
        rows = [
            {"dataset": "d", "node": 0, "inputs": [1], "weight": 0.25, "entropy": 0.6,
             "cond_entropy": 0.4, "kl_data": 0.2, "kl_true": 0.1},
            {"dataset": "d", "node": 1, "inputs": [], "weight": 0.75, "entropy": 0.6,
             "cond_entropy": 0.6, "kl_data": 0.0, "kl_true": 0.4},
        ]
        events = [EventEnvelope.create(EventType.EVALUATION_NODE, "run", row) for row in rows]

        lines = NodeTableProjection().project(events).splitlines()
        assert lines[1].split("\t")[2] == "1"
        assert lines[2].split("\t")[2] == "-"
        avg = lines[3].split("\t")
        assert avg[1] == "avg"
        assert float(avg[6]) == pytest.approx(0.05)
        assert float(avg[7]) == pytest.approx(0.325)
        assert GeneralizationProjection().project(events) == {"d": 0.5}

    def test_generalization_report(self):
        rows = [
            {"dataset": "b", "node": 0, "kl_data": 0.3, "kl_true": 0.1},
            {"dataset": "a", "node": 0, "kl_data": 0.1, "kl_true": 0.2},
            {"dataset": "a", "node": 1, "kl_data": 0.2, "kl_true": 0.2},
            {"dataset": "b", "node": 1, "kl_data": 0.4, "kl_true": 0.0},
        ]
        events = [EventEnvelope.create(EventType.EVALUATION_NODE, "run", row) for row in rows]

        assert GeneralizationProjection().project(events) == {"a": 0.5, "b": 1.0}
        lines = [line.split("\t") for line in GeneralizationReportProjection().project(events).splitlines()]
        assert lines == [
            ["dataset", "nodes", "generalizing", "rate"],
            ["a", "2", "1", "0.5"],
            ["b", "2", "2", "1"],
        ]

    def test_verification_summary(self):
        """Summary counts passes and keeps the worst value per check."""
        rows = [
            {"check": "bregman", "trial": 0, "n": 3, "value": 1e-12, "tolerance": 1e-6, "passed": True},
            {"check": "bregman", "trial": 1, "n": 2, "value": 2e-6, "tolerance": 1e-6, "passed": False},
        ]
        events = [EventEnvelope.create(EventType.VERIFICATION_TRIAL, "run", row) for row in rows]

        assert VerificationSummaryProjection().project(events) == {"bregman": (1, 2, 2e-6)}
        tsv = VerificationProjection().project(events)
        assert tsv.splitlines()[2].endswith("no")


class TestRunLogProjection:
    @pytest.mark.asyncio
    async def test_full_flow(self):
        """record -> query -> project gives a readable log with folded rows."""
        async with Observer(MemoryEventStore()) as observer:
            adapter = PipelineIngestAdapter(observer, "run_001")
            await adapter.started("compare", {})
            await adapter.on_data("BN12-20S", 1000, kl_train=0.0123)
            await adapter.on_model("BN12-20S", SystemKind.BN, evaluations=40, learn_ms=3.0)
            await adapter.on_row("node", {"dataset": "BN12-20S", "node": 0})
            await adapter.on_warning("something odd")
            await adapter.completed("compare", cells=6)

            events = await observer.get_events("run_001")
            assert len(events) == 6
            log = RunLogProjection(include_timestamps=False).project(events)

        assert "=== Run: run_001 ===" in log
        assert "[STARTED] compare" in log
        assert "BN12-20S: sampled N=1000, KL(data||truth) 0.0123" in log
        assert "learned BN with 40 evaluations in 3 ms" in log
        assert "[WARNING] something odd" in log
        assert "(1 report rows not shown)" in log
        assert "[COMPLETED] compare" in log

    def test_empty(self):
        assert RunLogProjection().project([]) == ""
