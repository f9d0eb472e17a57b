# /src/depnet/cli.py
# Command-line entry point: one subcommand per pipeline

import argparse
import asyncio
import logging
import math
import sys
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .config import RunSettings, configure_logging, open_store
from .errors import DepnetError
from .eval.benchmarks import LARGE_N, SMALL_N, default_benchmarks
from .eval.compare import CompareSettings, compare
from .eval.evaluate import eval_output, node_table
from .eval.verify import CHECKS, verify_theorems
from .events.types import EventOrigin, EventType, SystemKind
from .ingest.pipeline import PipelineIngestAdapter
from .learning.bayesnet_learner import learn_bn
from .learning.depnet_learner import learn
from .learning.penalty import PenaltyKind
from .observer import Observer
from .projections.base import to_tsv
from .projections.nodes import GeneralizationReportProjection, NodeTableProjection
from .projections.report import ComparisonProjection, TimingProjection
from .projections.run_log import RunLogProjection
from .projections.verification import VerificationProjection, VerificationSummaryProjection
from .core.dataset import empirical_distribution
from .core.joint import JointTable
from .sampling.ancestral import ancestral_sample
from .sampling.gibbs import SamplerConfig, SelectionMode, infer, run
from .storage.files import (
    load_dataset,
    load_depnet,
    load_joint,
    read_text,
    write_text,
)
from .storage.formats import (
    fmt_report,
    format_bayesnet,
    format_dataset,
    format_depnet,
    format_joint,
    parse_bayesnet,
    parse_joint,
)
from .synth.ising import IsingSpec, ising_joint
from .synth.random_bn import RandomBnSpec, bn_joint, random_bn
from .synth.sample import sample_joint

logger = logging.getLogger(__name__)


# ========== Parser ==========

def _clamp(text: str) -> Tuple[int, int]:
    """VAR=VAL -> (var, val)."""
    try:
        var, value = text.split("=", 1)
        return int(var), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected VAR=VAL, got {text!r}") from None


def _global_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    parent.add_argument("--penalty", choices=[p.value for p in PenaltyKind], default="mdl")
    parent.add_argument("--positivity", choices=["on", "off"], default="on",
                        help="raise zero counts to one before estimating CPTs")
    parent.add_argument("--out", help="output file (directory for compare); stdout when omitted")
    parent.add_argument("--ledger", help="run ledger: *.db for SQLite, otherwise a JSON Lines directory")
    parent.add_argument("--verbose", action="store_true", help="debug logging")
    return parent


def _sampler_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=[m.value for m in SelectionMode], default="random")
    parser.add_argument("--samples", type=int, required=True, help="number of outputs N")
    parser.add_argument("--burn-in", type=int, default=None, help="burn-in firings b (default n)")
    parser.add_argument("--thin", type=int, default=None, help="firings between outputs k (default n)")
    parser.add_argument("--clamp", type=_clamp, nargs="*", default=[], metavar="VAR=VAL")


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="depnet",
        description="Learn dependency networks, sample them and compare them with Bayesian networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-bn", parents=[common], help="random Bayesian network")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--alpha", type=float, default=1.0, help="Dirichlet concentration of CPT rows")
    p.add_argument("--joint", help="also write the exact joint table here")

    p = sub.add_parser("gen-ising", parents=[common], help="exact Ising joint table")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--coupling", type=float, default=0.4)
    p.add_argument("--field", type=float, default=0.0)

    p = sub.add_parser("sample-true", parents=[common], help="i.i.d. data from a joint table or Bayesian network")
    p.add_argument("truth", help="joint-table or bayesnet file")
    p.add_argument("--n", type=int, required=True, help="number of rows")

    p = sub.add_parser("learn-dn", parents=[common], help="learn a dependency network")
    p.add_argument("data")
    p.add_argument("--guard", action="store_true", help="fall back to all other variables when cheaper")

    p = sub.add_parser("learn-bn", parents=[common], help="learn a Bayesian network by hill climbing")
    p.add_argument("data")

    p = sub.add_parser("sample", parents=[common], help="pseudo-Gibbs outputs of a dependency network")
    p.add_argument("model")
    _sampler_flags(p)

    p = sub.add_parser("infer", parents=[common], help="estimate p(U|V=v) by clamped sampling")
    p.add_argument("model")
    p.add_argument("--query", type=int, nargs="*", default=None, help="U (default: every unclamped variable)")
    _sampler_flags(p)

    p = sub.add_parser("eval", parents=[common], help="KL of output data against a true joint table")
    p.add_argument("outputs")
    p.add_argument("truth")
    p.add_argument("--model", help="dependency network for the per-node table")
    p.add_argument("--data", help="training data for the per-node table")

    p = sub.add_parser("compare", parents=[common], help="DN vs BN on the benchmark suite")
    p.add_argument("--full", action="store_true", help="add BN20-37 and Ising5x5")
    p.add_argument("--sizes", type=int, nargs="+", default=[SMALL_N, LARGE_N])
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--n-out", type=int, default=None, help="outputs per cell (default: training size)")
    p.add_argument("--timing-runs", type=int, default=3)
    p.add_argument("--mode", choices=[m.value for m in SelectionMode], default="random")
    p.add_argument("--only", nargs="*", default=None, help="dataset names to keep")

    p = sub.add_parser("verify-theorems", parents=[common], help="numerical checks on random instances")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--checks", nargs="*", choices=list(CHECKS), default=None)
    return parser


# ========== Output ==========

async def _emit(text: str, out: Optional[str]) -> None:
    if out:
        await write_text(out, text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


async def _load_truth(path: str):
    """A joint table or a Bayesian network, told apart by the header."""
    text = await read_text(path)
    words = (line.split() for line in text.splitlines())
    head = next((w[0] for w in words if w and not w[0].startswith("#")), "")
    if head == "bayesnet":
        return parse_bayesnet(text)
    return parse_joint(text)


def _sampler_config(args: argparse.Namespace, settings: RunSettings) -> SamplerConfig:
    return SamplerConfig(
        N=args.samples,
        mode=SelectionMode(args.mode),
        clamps=dict(args.clamp),
        burn_in=args.burn_in,
        thin=args.thin,
        seed=settings.seed,
    )


# ========== Commands ==========

async def cmd_gen_bn(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    spec = RandomBnSpec(args.nodes, args.edges, seed=settings.seed, alpha=args.alpha)
    bn = random_bn(spec)
    await adapter.on_model(spec.name, SystemKind.TRUTH, edges=[list(e) for e in bn.edges()], spec=spec.to_dict())
    await _emit(format_bayesnet(bn), settings.out)
    if args.joint:
        await write_text(args.joint, format_joint(bn_joint(bn)))


async def cmd_gen_ising(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    spec = IsingSpec(args.rows, args.cols, args.coupling, args.field)
    p = await asyncio.to_thread(ising_joint, spec)
    await adapter.on_model(spec.name, SystemKind.TRUTH, spec=spec.to_dict())
    await _emit(format_joint(p), settings.out)


async def cmd_sample_true(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    truth = await _load_truth(args.truth)
    if isinstance(truth, JointTable):
        d = sample_joint(truth, args.n, settings.seed)
    else:
        d = ancestral_sample(truth, args.n, settings.seed)
    await adapter.on_data(Path(args.truth).stem, d.N, seed=settings.seed)
    await _emit(format_dataset(d), settings.out)


async def cmd_learn_dn(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    d = await load_dataset(args.data)
    result = await asyncio.to_thread(lambda: learn(d, settings.pen, settings.positivity, guard=args.guard))
    await adapter.on_model(
        Path(args.data).stem,
        SystemKind.DN,
        evaluations=result.total_evaluations,
        per_node=list(result.evaluations),
        edges=[list(e) for e in result.network.edges()],
    )
    await _emit(format_depnet(result.network), settings.out)


async def cmd_learn_bn(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    d = await load_dataset(args.data)
    result = await asyncio.to_thread(learn_bn, d, settings.pen, settings.positivity)
    await adapter.on_model(
        Path(args.data).stem,
        SystemKind.BN,
        evaluations=result.evaluations,
        edges=[list(e) for e in result.network.edges()],
    )
    await _emit(format_bayesnet(result.network), settings.out)


async def cmd_sample(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    dn = await load_depnet(args.model)
    result = await asyncio.to_thread(run, dn, _sampler_config(args, settings))
    await adapter.on_output(
        Path(args.model).stem, SystemKind.DN, settings.seed,
        N=result.outputs.N, steps=result.steps_taken, config=result.config.to_dict(),
    )
    await _emit(format_dataset(result.outputs), settings.out)


async def cmd_infer(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    dn = await load_depnet(args.model)
    cfg = _sampler_config(args, settings)
    result = await asyncio.to_thread(infer, dn, cfg.clamps, cfg, args.query)
    await adapter.on_output(
        Path(args.model).stem, SystemKind.DN, settings.seed,
        N=result.run.outputs.N, clamps={str(k): v for k, v in result.clamps.items()}, query=list(result.query),
    )
    columns = [f"X{i}" for i in result.query] + ["prob"]
    rows = [
        {**{f"X{i}": v for i, v in zip(result.query, values)}, "prob": float(result.estimate[values])}
        for values in np.ndindex(*result.estimate.shape)
    ]
    await _emit(to_tsv(columns, rows), settings.out)


async def cmd_eval(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    outputs = await load_dataset(args.outputs)
    truth = await load_joint(args.truth)
    value = eval_output(outputs, truth)
    name = Path(args.outputs).stem
    row = {"dataset": name, "N_out": outputs.N, "kl_output": value}
    await adapter.on_row("evaluation", {**row, "system": SystemKind.NONE.value, "seed": settings.seed})
    if math.isinf(value):
        await adapter.on_warning(f"{name}: outputs leave the support of the true distribution", dataset=name)
    text = to_tsv(["dataset", "N_out", "kl_output"], [row])
    if args.model and args.data:
        dn = await load_depnet(args.model)
        d = await load_dataset(args.data)
        table = await asyncio.to_thread(node_table, dn, empirical_distribution(d), truth)
        for node in table.rows:
            await adapter.on_row("node", {"dataset": name, "system": SystemKind.DN.value, **node.to_dict()})
        nodes = await adapter.run_events(EventType.EVALUATION_NODE)
        text += "\n" + NodeTableProjection().project(nodes)
    await _emit(text, settings.out)


async def cmd_compare(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> None:
    benchmarks = default_benchmarks(full=args.full, sizes=args.sizes)
    if args.only:
        benchmarks = [b for b in benchmarks if b.name in set(args.only)]
        if not benchmarks:
            raise ValueError(f"no benchmark named {args.only}")
    compare_settings = CompareSettings(
        seeds=tuple(args.seeds),
        N_out=args.n_out,
        data_seed=settings.seed,
        pen=settings.pen,
        positivity=settings.positivity,
        mode=SelectionMode(args.mode),
        timing_runs=args.timing_runs,
    )

    async def progress(event):
        p = event.payload
        logger.info(f"{p['dataset']} {p['system']} seed {p['seed']}: KL {fmt_report(p['kl_output'])}")

    observer = adapter.observer
    sub_id = observer.subscribe(progress, EventType.EVALUATION_RECORDED)
    try:
        await compare(benchmarks, compare_settings, observer, adapter.correlation_id)
    finally:
        observer.unsubscribe(sub_id)
    events = await adapter.run_events()
    reports: Dict[str, str] = {
        "comparison.tsv": ComparisonProjection().project(events),
        "timing.tsv": TimingProjection().project(events),
        "nodes.tsv": NodeTableProjection().project(events),
        "generalization.tsv": GeneralizationReportProjection().project(events),
        "run_log.txt": RunLogProjection().project(events),
    }
    if not settings.out:
        sys.stdout.write(reports["comparison.tsv"])
        return
    for name, text in reports.items():
        await write_text(Path(settings.out) / name, text)
    logger.info(f"Wrote {len(reports)} reports to {settings.out}")


async def cmd_verify(args, settings: RunSettings, adapter: PipelineIngestAdapter) -> int:
    rows = await asyncio.to_thread(verify_theorems, args.trials, settings.seed, args.checks)
    for row in rows:
        await adapter.on_row("verification", row.to_dict())
    events = await adapter.run_events(EventType.VERIFICATION_TRIAL)
    await _emit(VerificationProjection().project(events), settings.out)
    summary = VerificationSummaryProjection().project(events)
    for check, (passed, total, worst) in summary.items():
        logger.info(f"{check}: {passed}/{total} passed, worst {fmt_report(worst)}")
    return 0 if all(passed == total for passed, total, _ in summary.values()) else 1


COMMANDS = {
    "gen-bn": cmd_gen_bn,
    "gen-ising": cmd_gen_ising,
    "sample-true": cmd_sample_true,
    "learn-dn": cmd_learn_dn,
    "learn-bn": cmd_learn_bn,
    "sample": cmd_sample,
    "infer": cmd_infer,
    "eval": cmd_eval,
    "compare": cmd_compare,
    "verify-theorems": cmd_verify,
}


# Failures a command reports with exit code 1 instead of a traceback.
COMMAND_ERRORS = (DepnetError, ValueError, OSError)


async def run_command(args: argparse.Namespace) -> int:
    settings = RunSettings.from_args(args)
    async with Observer(open_store(settings.ledger)) as observer:
        origin = EventOrigin.VERIFIER if args.command == "verify-theorems" else EventOrigin.CLI
        adapter = PipelineIngestAdapter(observer, observer.new_run(args.command), origin=origin)
        await adapter.started(args.command, settings.to_dict())
        try:
            status = await COMMANDS[args.command](args, settings, adapter)
        except COMMAND_ERRORS as e:
            await adapter.on_error(args.command, e)
            raise
        await adapter.completed(args.command, status=status or 0)
    return status or 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return asyncio.run(run_command(args))
    except COMMAND_ERRORS as e:
        logger.error(f"{args.command} failed: {e}")
        return 1
