# /src/depnet/infogeo/oracles.py
# Brute-force grid oracle for the m-projection onto E(θ_i)

from itertools import combinations
from typing import Tuple

import numpy as np
from scipy.special import xlogy

from .geometry import check_compatible
from ..core.joint import JointTable

MAX_GRID_POINTS = 10 ** 6


def simplex_grid(dim: int, step: float) -> np.ndarray:
    """All points of the (dim−1)-simplex whose coordinates are multiples of ``step``."""
    parts = int(round(1.0 / step))
    if abs(parts * step - 1.0) > 1e-9:
        raise ValueError(f"grid step {step} must divide 1")
    # stars and bars: choose dim−1 bar positions among parts+dim−1 slots
    slots = parts + dim - 1
    bars = np.array(list(combinations(range(slots), dim - 1)), dtype=np.int64)
    if bars.size == 0:
        return np.ones((1, 1))
    if len(bars) > MAX_GRID_POINTS:
        raise ValueError(f"{len(bars)} grid points exceed the oracle limit")
    edges = np.hstack([np.full((len(bars), 1), -1), bars, np.full((len(bars), 1), slots)])
    return (np.diff(edges, axis=1) - 1) / parts


def grid_argmin_kl(p: JointTable, cpt, step: float = 0.02) -> Tuple[float, np.ndarray]:
    """min KL(p‖q) over q = r(X_{-i})·θ_i with r on a simplex grid.

    Returns the smallest divergence and the minimizing r (flattened in
    mixed-radix order of X_{-i}).
    """
    check_compatible(p.space, cpt)
    i = cpt.child
    rest = p.tensor.sum(axis=i)
    theta = np.asarray(cpt.broadcast(p.space))
    support = p.tensor > 0
    constant = float(
        np.sum(xlogy(p.tensor, p.tensor)) - np.sum(np.where(support, p.tensor * np.log(np.where(support, theta, 1.0)), 0.0))
    )
    grid = simplex_grid(rest.size, step)
    cross = xlogy(rest.reshape(1, -1), grid).sum(axis=1)
    divergences = constant - cross
    best = int(np.argmin(divergences))
    return float(divergences[best]), grid[best]
