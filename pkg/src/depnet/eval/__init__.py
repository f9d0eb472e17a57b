# /src/depnet/eval/__init__.py
# Experiment pipelines: output accuracy, node tables, DN vs BN comparison, verification

from .evaluate import NodeRow, NodeTable, eval_output, node_table
from .benchmarks import Benchmark, default_benchmarks, SMALL_N, LARGE_N
from .compare import CompareSettings, CompareResult, SystemRun, compare, compare_benchmark
from .verify import CHECKS, VerificationRow, verify_theorems

__all__ = [
    "NodeRow",
    "NodeTable",
    "eval_output",
    "node_table",
    "Benchmark",
    "default_benchmarks",
    "SMALL_N",
    "LARGE_N",
    "CompareSettings",
    "CompareResult",
    "SystemRun",
    "compare",
    "compare_benchmark",
    "CHECKS",
    "VerificationRow",
    "verify_theorems",
]
