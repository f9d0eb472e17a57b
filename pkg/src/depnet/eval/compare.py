# /src/depnet/eval/compare.py
# DN vs BN comparison pipeline: sample training data, learn both, draw outputs, score

import asyncio
import logging
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from .benchmarks import Benchmark, Truth
from .evaluate import NodeTable, eval_output, node_table
from ..core.dataset import empirical_distribution
from ..core.joint import JointTable, kl_divergence
from ..events.types import SystemKind
from ..ingest.pipeline import PipelineIngestAdapter
from ..learning.bayesnet_learner import learn_bn
from ..learning.depnet_learner import learn
from ..learning.penalty import PenaltyKind
from ..observer import Observer
from ..sampling.ancestral import ancestral_sample
from ..sampling.gibbs import SamplerConfig, SelectionMode, run
from ..synth.sample import sample_joint

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class CompareSettings:
    """Knobs shared by every benchmark of one comparison.

    ``N_out`` of None draws as many outputs as there are training rows.
    Learning is repeated ``timing_runs`` times and the median time kept.
    """
    seeds: Tuple[int, ...] = (0, 1, 2)
    N_out: Optional[int] = None
    data_seed: int = 0
    pen: PenaltyKind = PenaltyKind.MDL
    positivity: bool = True
    guard: bool = False
    mode: SelectionMode = SelectionMode.RANDOM
    timing_runs: int = 3

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "pen", PenaltyKind(self.pen))
        object.__setattr__(self, "mode", SelectionMode(self.mode))
        if not self.seeds:
            raise ValueError("at least one output seed is required")
        if self.timing_runs < 1:
            raise ValueError("timing_runs must be at least 1")

    def outputs_for(self, N_train: int) -> int:
        return self.N_out if self.N_out is not None else N_train

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seeds": list(self.seeds),
            "N_out": self.N_out,
            "data_seed": self.data_seed,
            "pen": self.pen.value,
            "positivity": self.positivity,
            "guard": self.guard,
            "mode": self.mode.value,
            "timing_runs": self.timing_runs,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CompareSettings":
        return cls(**{**data, "seeds": tuple(data.get("seeds", (0, 1, 2)))})


@dataclass(frozen=True)
class SystemRun:
    """One (dataset, system, seed) cell of the comparison."""
    dataset: str
    n: int
    N_train: int
    N_out: int
    system: SystemKind
    seed: int
    kl_train: float
    kl_output: float
    evaluations: int
    learn_ms: float
    sample_ms: float

    @property
    def sort_key(self) -> Tuple[str, str, int]:
        return (self.dataset, self.system.value, self.seed)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dataset": self.dataset,
            "n": self.n,
            "N_train": self.N_train,
            "N_out": self.N_out,
            "system": self.system.value,
            "seed": self.seed,
            "kl_train": self.kl_train,
            "kl_output": self.kl_output,
            "evaluations": self.evaluations,
            "learn_ms": self.learn_ms,
            "sample_ms": self.sample_ms,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SystemRun":
        return cls(**{**data, "system": SystemKind(data["system"])})


@dataclass
class CompareResult:
    correlation_id: str
    runs: List[SystemRun] = field(default_factory=list)
    nodes: Dict[str, NodeTable] = field(default_factory=dict)


def _timed(fn: Callable[[], T], runs: int) -> Tuple[T, List[float]]:
    """Call ``fn`` ``runs`` times; keep the first result and every wall time in ms."""
    result = None
    times = []
    for k in range(runs):
        start = time.perf_counter()
        value = fn()
        times.append((time.perf_counter() - start) * 1000.0)
        if k == 0:
            result = value
    return result, times


@dataclass(frozen=True, eq=False)
class _Learned:
    system: SystemKind
    model: Any
    evaluations: int
    times: List[float]

    @property
    def learn_ms(self) -> float:
        return statistics.median(self.times)


def _sample_cell(
    learned: _Learned,
    bench: Benchmark,
    settings: CompareSettings,
    seed: int,
    p_true: JointTable,
    kl_train: float
) -> SystemRun:
    N_out = settings.outputs_for(bench.N)
    start = time.perf_counter()
    if learned.system is SystemKind.DN:
        outputs = run(learned.model, SamplerConfig(N=N_out, mode=settings.mode, seed=seed)).outputs
    else:
        outputs = ancestral_sample(learned.model, N_out, seed)
    sample_ms = (time.perf_counter() - start) * 1000.0
    return SystemRun(
        dataset=bench.name,
        n=bench.n,
        N_train=bench.N,
        N_out=N_out,
        system=learned.system,
        seed=seed,
        kl_train=kl_train,
        kl_output=eval_output(outputs, p_true),
        evaluations=learned.evaluations,
        learn_ms=learned.learn_ms,
        sample_ms=sample_ms,
    )


async def compare_benchmark(
    bench: Benchmark,
    settings: CompareSettings,
    adapter: PipelineIngestAdapter,
    p_true: Optional[JointTable] = None
) -> Tuple[List[SystemRun], NodeTable]:
    """Full pipeline for one dataset.

    Learning runs one system at a time so the timings do not compete for
    the CPU; output sampling for every (system, seed) cell runs concurrently.
    """
    if p_true is None:
        p_true = await asyncio.to_thread(bench.joint)
    d = await asyncio.to_thread(sample_joint, p_true, bench.N, settings.data_seed)
    p_data = empirical_distribution(d)
    kl_train = kl_divergence(p_data, p_true)
    await adapter.on_data(bench.name, bench.N, n=bench.n, kl_train=kl_train, seed=settings.data_seed)

    dn_result, dn_times = await asyncio.to_thread(
        _timed, lambda: learn(d, settings.pen, settings.positivity, guard=settings.guard), settings.timing_runs
    )
    bn_result, bn_times = await asyncio.to_thread(
        _timed, lambda: learn_bn(d, settings.pen, settings.positivity), settings.timing_runs
    )
    systems = [
        _Learned(SystemKind.DN, dn_result.network, dn_result.total_evaluations, dn_times),
        _Learned(SystemKind.BN, bn_result.network, bn_result.evaluations, bn_times),
    ]
    for learned in systems:
        await adapter.on_model(
            bench.name,
            learned.system,
            evaluations=learned.evaluations,
            edges=[list(e) for e in learned.model.edges()],
            learn_ms=learned.learn_ms,
            learn_ms_runs=learned.times,
        )

    nodes = await asyncio.to_thread(node_table, dn_result.network, p_data, p_true)
    for row in nodes.rows:
        await adapter.on_row("node", {"dataset": bench.name, "system": SystemKind.DN.value, **row.to_dict()})

    cells = await asyncio.gather(*[
        asyncio.to_thread(_sample_cell, learned, bench, settings, seed, p_true, kl_train)
        for learned in systems
        for seed in settings.seeds
    ])
    runs = sorted(cells, key=lambda r: r.sort_key)
    for cell in runs:
        await adapter.on_output(bench.name, cell.system, cell.seed, N=cell.N_out, sample_ms=cell.sample_ms)
        if math.isinf(cell.kl_output):
            await adapter.on_warning(
                f"{bench.name} {cell.system.value} seed {cell.seed}: outputs leave the support of p*",
                dataset=bench.name,
                system=cell.system.value,
            )
        await adapter.on_row("evaluation", cell.to_dict())
    logger.info(
        f"{bench.name}: #eval DN {systems[0].evaluations} vs BN {systems[1].evaluations}, "
        f"learn ms DN {systems[0].learn_ms:.1f} vs BN {systems[1].learn_ms:.1f}"
    )
    return runs, nodes


async def compare(
    benchmarks: Sequence[Benchmark],
    settings: CompareSettings,
    observer: Observer,
    correlation_id: Optional[str] = None
) -> CompareResult:
    """Run every benchmark and record the results in the observer's ledger."""
    result = CompareResult(correlation_id=correlation_id or observer.new_run("compare"))
    adapter = PipelineIngestAdapter(observer, result.correlation_id)
    await adapter.started("compare", {**settings.to_dict(), "datasets": [b.name for b in benchmarks]})
    truths: Dict[Truth, JointTable] = {}
    for bench in benchmarks:
        key = bench.truth
        if key not in truths:
            truths[key] = await asyncio.to_thread(bench.joint)
        runs, nodes = await compare_benchmark(bench, settings, adapter, truths[key])
        result.runs.extend(runs)
        result.nodes[bench.name] = nodes
    result.runs.sort(key=lambda r: r.sort_key)
    await adapter.completed("compare", cells=len(result.runs))
    return result
