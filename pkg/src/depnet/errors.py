# /src/depnet/errors.py
# Exception hierarchy shared by every depnet subpackage

from typing import Any, Dict, Optional, Sequence


class DepnetError(Exception):
    """Base class for all depnet failures."""


class SpaceError(DepnetError, ValueError):
    """Raised when a variable space, subset or assignment is malformed."""


class EmptyDatasetError(DepnetError, ValueError):
    """Raised when an operation needs at least one row."""

    def __init__(self, message: str = "empty dataset"):
        super().__init__(message)


class UndefinedRowError(DepnetError, ValueError):
    """Raised when a CPT row with no training support is queried.

    Only happens with the positivity trick turned off, where a row with
    N_{y_i} = 0 has no estimate.
    """

    def __init__(self, node: int, inputs: Dict[int, int]):
        self.node = node
        self.inputs = dict(inputs)
        super().__init__(f"CPT row of node {node} is undefined for inputs {self.inputs}")


class CycleError(DepnetError, ValueError):
    """Raised when a Bayesian-network graph contains a directed cycle."""

    def __init__(self, cycle: Optional[Sequence[Any]] = None):
        self.cycle = list(cycle or [])
        path = "->".join(str(node) for node in self.cycle)
        super().__init__(f"graph is cyclic: {path}" if path else "graph is cyclic")


class ConvergenceError(DepnetError, RuntimeError):
    """Raised when an iterative solver hits its iteration cap."""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(L1 residual {residual:.3e})"
        )


class FormatError(DepnetError, ValueError):
    """Raised when a dataset, model or joint-table text file cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
