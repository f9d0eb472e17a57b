# /src/depnet/infogeo/chain.py
# Exact pseudo-Gibbs chains: transition matrices and stationary distributions

import logging
import math
from typing import List, Mapping, Optional

import numpy as np
from scipy import sparse

from .geometry import check_compatible, fc_divergence, kl_to_manifold, projection_weights
from ..core.joint import JointTable
from ..core.space import VarSpace
from ..errors import ConvergenceError, UndefinedRowError
from ..models.cpt import Cpt
from ..models.depnet import DependencyNetwork

logger = logging.getLogger(__name__)

# Largest joint space the exact chain oracle accepts.
MAX_CHAIN_STATES = 2 ** 16
STATIONARY_TOL = 1e-12
MAX_ITERATIONS = 10 ** 6


def firing_matrix(space: VarSpace, cpt: Cpt) -> sparse.csr_matrix:
    """Row-stochastic matrix of firing node i once: x → (x_{-i}, x'_i ~ θ_i(·|y_i))."""
    check_compatible(space, cpt)
    space.require_dense(MAX_CHAIN_STATES)
    i = cpt.child
    theta = cpt.broadcast(space)
    if np.isnan(theta).any():
        bad = int(np.flatnonzero(np.isnan(theta).reshape(-1))[0])
        state = space.assignment(bad)
        raise UndefinedRowError(i, {v: state[v] for v in cpt.inputs})
    states = np.arange(space.total_states)
    current = np.unravel_index(states, space.cards)[i]
    stride = space.strides[i]
    rows, cols, vals = [], [], []
    for value in range(space.cards[i]):
        prob = np.broadcast_to(
            np.expand_dims(np.take(theta, value, axis=i), i), space.cards
        ).reshape(-1)
        rows.append(states)
        cols.append(states + (value - current) * stride)
        vals.append(prob)
    matrix = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(space.total_states, space.total_states),
    )
    return matrix.tocsr()


def transition_matrix(
    dn: DependencyNetwork,
    clamps: Optional[Mapping[int, int]] = None
) -> sparse.csr_matrix:
    """One step of random-pseudo-Gibbs sampling as a sparse stochastic matrix.

    Entry (x → x') = Σ_i c_i θ_i(x'_i|y_i)·[x'_{-i} = x_{-i}] over fireable
    nodes, with the weights of clamped nodes removed and the rest rescaled.
    """
    dn.space.require_dense(MAX_CHAIN_STATES)
    clamps = dn.space.validate_partial(clamps or {})
    if len(clamps) == dn.n:
        raise ValueError("all nodes are clamped; nothing can fire")
    weights = dn.weights.renormalized(list(clamps))
    total = sparse.csr_matrix((dn.space.total_states, dn.space.total_states))
    for i in dn.fireable(clamps):
        if weights[i] > 0:
            total = total + weights[i] * firing_matrix(dn.space, dn.cpts[i])
    return total.tocsr()


def _initial(space: VarSpace, clamps: Mapping[int, int]) -> np.ndarray:
    """Uniform distribution over the states that agree with the clamps."""
    mask = np.ones(space.cards, dtype=bool)
    for var, value in clamps.items():
        keep = np.zeros(space.cards[var], dtype=bool)
        keep[value] = True
        shape = [1] * space.n
        shape[var] = space.cards[var]
        mask &= keep.reshape(shape)
    start = mask.reshape(-1).astype(np.float64)
    return start / start.sum()


def _power_iterate(step, start: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    current = start
    residual = math.inf
    for iteration in range(1, max_iter + 1):
        nxt = step(current)
        residual = float(np.abs(nxt - current).sum())
        current = nxt
        if residual < tol:
            logger.debug(f"Power iteration converged in {iteration} steps (residual {residual:.2e})")
            return current / current.sum()
    raise ConvergenceError(residual, max_iter)


def stationary_exact(
    dn: DependencyNetwork,
    clamps: Optional[Mapping[int, int]] = None,
    tol: float = STATIONARY_TOL,
    max_iter: int = MAX_ITERATIONS
) -> JointTable:
    """Stationary distribution π of random-pseudo-Gibbs sampling by power iteration."""
    clamps = dn.space.validate_partial(clamps or {})
    backward = transition_matrix(dn, clamps).T.tocsr()
    pi = _power_iterate(lambda v: backward @ v, _initial(dn.space, clamps), tol, max_iter)
    return JointTable.from_weights(dn.space, pi)


def phase_stationaries(
    dn: DependencyNetwork,
    clamps: Optional[Mapping[int, int]] = None,
    tol: float = STATIONARY_TOL,
    max_iter: int = MAX_ITERATIONS
) -> List[JointTable]:
    """π_0 … π_{m-1} of ordered-pseudo-Gibbs sampling (m fireable nodes).

    π_k is the stationary distribution of the states recorded at positions
    k, k+m, k+2m, … of a chain that fires the unclamped nodes cyclically in
    id order, the first recorded state being the initial one.
    """
    clamps = dn.space.validate_partial(clamps or {})
    order = dn.fireable(clamps)
    if not order:
        raise ValueError("all nodes are clamped; nothing can fire")
    backward = [firing_matrix(dn.space, dn.cpts[i]).T.tocsr() for i in order]

    def cycle(v: np.ndarray) -> np.ndarray:
        for matrix in backward:
            v = matrix @ v
        return v

    pi = _power_iterate(cycle, _initial(dn.space, clamps), tol, max_iter)
    phases = [pi]
    for matrix in backward[:-1]:
        phases.append(matrix @ phases[-1])
    return [JointTable.from_weights(dn.space, phase) for phase in phases]


def stationary_ordered_exact(
    dn: DependencyNetwork,
    clamps: Optional[Mapping[int, int]] = None,
    tol: float = STATIONARY_TOL,
    max_iter: int = MAX_ITERATIONS
) -> JointTable:
    """Mean of the phase stationaries, (π_0 + … + π_{m-1})/m.

    This is the long-run distribution of the ordered chain taken at every
    firing. A sampler that records only every k-th state sees the phases
    visited by its thinning; ``ordered_output_exact`` covers that case,
    and the two agree whenever k and m are coprime.
    """
    phases = phase_stationaries(dn, clamps, tol, max_iter)
    return JointTable.from_weights(dn.space, np.mean([p.probs for p in phases], axis=0))


def visited_phases(m: int, burn_in: int, thin: int) -> List[int]:
    """Phases (b + r·k) mod m of the recorded states over one full period."""
    return [(burn_in + r * thin) % m for r in range(m // math.gcd(thin, m))]


def ordered_output_exact(
    dn: DependencyNetwork,
    clamps: Optional[Mapping[int, int]] = None,
    burn_in: Optional[int] = None,
    thin: Optional[int] = None,
    tol: float = STATIONARY_TOL,
    max_iter: int = MAX_ITERATIONS
) -> JointTable:
    """Long-run output distribution of ordered sampling with burn-in b and thinning k.

    Output r is the state after b + r·k firings, so only the phases
    (b + r·k) mod m are recorded, each equally often. b and k default to
    the number of nodes, as in the sampler; with k = m every output sits
    on phase b mod m.
    """
    clamps = dn.space.validate_partial(clamps or {})
    burn_in = dn.n if burn_in is None else burn_in
    thin = dn.n if thin is None else thin
    if burn_in < 0 or thin < 1:
        raise ValueError(f"need burn-in >= 0 and thinning >= 1; got b={burn_in}, k={thin}")
    phases = phase_stationaries(dn, clamps, tol, max_iter)
    picked = visited_phases(len(phases), burn_in, thin)
    return JointTable.from_weights(dn.space, np.mean([phases[k].probs for k in picked], axis=0))


def stationary_residual(dn: DependencyNetwork, pi: JointTable) -> float:
    """max_x |π(x) − Σ_i c_i π(x_{-i}) θ_i(x_i|y_i)| (the fixed-point equation)."""
    mixed = np.zeros(dn.space.cards)
    for i, weight in enumerate(dn.weights.c):
        if weight > 0:
            mixed = mixed + weight * projection_weights(pi, dn.cpts[i])
    return float(np.max(np.abs(pi.tensor - mixed)))


def fc_bound_slack(
    p: JointTable,
    dn: DependencyNetwork,
    pi: Optional[JointTable] = None
) -> float:
    """Σ_i c_i KL(p‖E(θ_i)) − FC(p‖π); never below zero up to round-off."""
    pi = pi if pi is not None else stationary_exact(dn)
    bound = sum(
        weight * kl_to_manifold(p, cpt)
        for weight, cpt in zip(dn.weights.c, dn.cpts)
        if weight > 0
    )
    if math.isinf(bound):
        return math.inf
    return bound - fc_divergence(p, pi, dn.weights)


# Older name of fc_bound_slack.
theorem3_slack = fc_bound_slack
