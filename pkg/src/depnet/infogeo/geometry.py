# /src/depnet/infogeo/geometry.py
# Full-conditional manifolds: m-projection, geodesics and the FC divergence

import math
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp, rel_entr, xlogy

from ..core.joint import JointTable, full_conditional, kl_divergence
from ..core.space import VarSpace
from ..errors import SpaceError, UndefinedRowError
from ..models.cpt import Cpt, SelectionWeights

Weights = Union[SelectionWeights, Sequence[float], np.ndarray]


def _weights(c: Weights) -> np.ndarray:
    if isinstance(c, SelectionWeights):
        return c.c
    return SelectionWeights(c).c


def check_compatible(space: VarSpace, cpt: Cpt) -> None:
    """Raise when a CPT does not live on ``space``."""
    space.subset([cpt.child, *cpt.inputs])
    if space.cards[cpt.child] != cpt.child_card:
        raise SpaceError(f"node {cpt.child}: cardinality differs from the space")
    for var, card in zip(cpt.inputs, cpt.input_cards):
        if space.cards[var] != card:
            raise SpaceError(f"node {cpt.child}: input {var} cardinality differs from the space")


def _raise_undefined(space: VarSpace, cpt: Cpt, mask: np.ndarray) -> None:
    flat = int(np.flatnonzero(mask.reshape(-1))[0])
    state = space.assignment(flat)
    raise UndefinedRowError(cpt.child, {v: state[v] for v in cpt.inputs})


# ========== m-projection ==========

def projection_weights(p: JointTable, cpt: Cpt) -> np.ndarray:
    """p(x_{-i})·θ_i(x_i|y_i) on the joint tensor (unnormalized)."""
    check_compatible(p.space, cpt)
    rest = p.tensor.sum(axis=cpt.child, keepdims=True)
    theta = cpt.broadcast(p.space)
    missing = np.isnan(theta) & (rest > 0)
    if missing.any():
        _raise_undefined(p.space, cpt, missing)
    return np.where(rest > 0, rest * np.nan_to_num(theta, nan=0.0), 0.0)


def m_project(p: JointTable, cpt: Cpt) -> JointTable:
    """m-projection of p onto E(θ_i): q(x) = p(x_{-i})·θ_i(x_i|y_i)."""
    return JointTable.from_weights(p.space, projection_weights(p, cpt))


def kl_to_manifold(p: JointTable, cpt: Cpt) -> float:
    """KL(p‖E(θ_i)) = KL(p‖m_project(p, θ_i)); +inf on a support violation."""
    return kl_divergence(p, m_project(p, cpt))


# ========== Full-conditional divergence ==========

def kl_to_full_conditional(p: JointTable, q: JointTable, i: int) -> float:
    """KL(p‖E_i(q)) where E_i(q) shares q's full conditional of X_i."""
    if p.space != q.space:
        raise SpaceError("p and q live on different spaces")
    rest = p.tensor.sum(axis=i, keepdims=True)
    q_cond = np.nan_to_num(full_conditional(q, i), nan=0.0)
    projected = rest * q_cond
    value = float(rel_entr(p.tensor, projected).sum())
    return math.inf if math.isinf(value) else max(value, 0.0)


def fc_divergence(p: JointTable, q: JointTable, c: Weights) -> float:
    """FC(p‖q) = Σ_i c_i ⟨ln p(X_i|X_{-i}) / q(X_i|X_{-i})⟩_p."""
    weights = _weights(c)
    total = 0.0
    for i, weight in enumerate(weights):
        if weight == 0:
            continue
        term = kl_to_full_conditional(p, q, i)
        if math.isinf(term):
            return math.inf
        total += weight * term
    return total


def pseudo_log_likelihood(p: JointTable, q: JointTable, c: Weights) -> float:
    """⟨Σ_i c_i ln q(X_i|X_{-i})⟩_p; -inf when q rules out a state p supports."""
    if p.space != q.space:
        raise SpaceError("p and q live on different spaces")
    weights = _weights(c)
    total = 0.0
    for i, weight in enumerate(weights):
        if weight == 0:
            continue
        q_cond = np.nan_to_num(full_conditional(q, i), nan=0.0)
        total += weight * float(xlogy(p.tensor, q_cond).sum())
    return total


def fc_bregman_function(p: JointTable, c: Weights) -> float:
    """f(p) = Σ_i c_i ⟨ln p(X_i|X_{-i})⟩_p, the generator of FC as a Bregman divergence."""
    return pseudo_log_likelihood(p, p, c)


def bregman_divergence(
    p: JointTable,
    q: JointTable,
    c: Weights,
    step: float = 1e-6
) -> float:
    """f(p) − f(q) − ∇f(q)·(p − q) for f = fc_bregman_function.

    The gradient term is the central finite-difference derivative of f
    along p − q, which stays on the simplex. q must be strictly positive.
    """
    if not q.is_positive():
        raise ValueError("finite differences need a strictly positive q")
    direction = p.probs - q.probs
    forward = JointTable(q.space, q.probs + step * direction)
    backward = JointTable(q.space, q.probs - step * direction)
    slope = (fc_bregman_function(forward, c) - fc_bregman_function(backward, c)) / (2 * step)
    return fc_bregman_function(p, c) - fc_bregman_function(q, c) - slope


# ========== Geodesics ==========

def _check_lambda(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"geodesic parameter must lie in [0, 1]; got {lam}")


def e_geodesic_point(p0: JointTable, p1: JointTable, lam: float) -> JointTable:
    """ln p_λ = (1−λ) ln p0 + λ ln p1 − ln Z."""
    _check_lambda(lam)
    if p0.space != p1.space:
        raise SpaceError("endpoints live on different spaces")
    if not (p0.is_positive() and p1.is_positive()):
        raise ValueError("e-geodesic requires positive distributions")
    logs = (1.0 - lam) * np.log(p0.probs) + lam * np.log(p1.probs)
    return JointTable(p0.space, np.exp(logs - logsumexp(logs)))


def m_geodesic_point(p0: JointTable, p1: JointTable, lam: float) -> JointTable:
    """p_λ = (1−λ) p0 + λ p1."""
    _check_lambda(lam)
    if p0.space != p1.space:
        raise SpaceError("endpoints live on different spaces")
    return JointTable.from_weights(p0.space, (1.0 - lam) * p0.probs + lam * p1.probs)


def orthogonality_residual(p: JointTable, q: JointTable, r: JointTable) -> float:
    """Σ_x (p(x) − q(x))(ln q(x) − ln r(x)); zero when m-geodesic pq ⟂ e-geodesic qr."""
    if not (q.is_positive() and r.is_positive()):
        raise ValueError("orthogonality needs positive q and r")
    return float(np.sum((p.probs - q.probs) * (np.log(q.probs) - np.log(r.probs))))


def full_conditional_residual(p: JointTable, cpt: Cpt) -> float:
    """max |p(x_i|x_{-i}) − θ_i(x_i|y_i)| over states where p(x_{-i}) > 0."""
    check_compatible(p.space, cpt)
    cond = full_conditional(p, cpt.child)
    theta = cpt.broadcast(p.space)
    mask = ~np.isnan(cond)
    return float(np.max(np.abs(cond[mask] - theta[mask]))) if mask.any() else 0.0


# ========== Inference decomposition ==========

def condition_on(p: JointTable, clamps: dict) -> Tuple[float, JointTable, List[int]]:
    """(p(v), p(·|v) over the unclamped variables, their original ids)."""
    clamps = p.space.validate_partial(clamps)
    free = [i for i in p.space.ids if i not in clamps]
    if not free:
        raise SpaceError("at least one variable must stay unclamped")
    index = tuple(clamps[i] if i in clamps else slice(None) for i in p.space.ids)
    slab = p.tensor[index]
    mass = float(slab.sum())
    if mass <= 0:
        raise ValueError(f"condition {clamps} has zero probability")
    return mass, JointTable.from_weights(p.space.sub_space(free), slab), free


def inference_decomposition(
    p: JointTable,
    cpt: Cpt,
    clamped: Sequence[int]
) -> List[Tuple[Tuple[int, ...], float, float]]:
    """Split KL(p‖E(θ_i)) over the values v of the clamped variables V.

    Returns (v, p(v), KL(p(·|v)‖E(θ_i(X_i|Z_i v)))) for every v with
    p(v) > 0; Σ p(v)·KL equals kl_to_manifold(p, θ_i).
    """
    clamped = p.space.subset(clamped)
    if cpt.child in clamped:
        raise SpaceError(f"node {cpt.child} is clamped; its CPT never fires")
    cards = tuple(p.space.cards[v] for v in clamped)
    terms = []
    for flat in range(p.space.states_of(clamped)):
        values = tuple(int(x) for x in np.unravel_index(flat, cards))
        clamps = dict(zip(clamped, values))
        index = tuple(clamps[i] if i in clamps else slice(None) for i in p.space.ids)
        if p.tensor[index].sum() <= 0:
            continue
        mass, p_v, free = condition_on(p, clamps)
        renumber = {old: new for new, old in enumerate(free)}
        theta_v = cpt.restrict(clamps).relabel(renumber)
        terms.append((values, mass, kl_to_manifold(p_v, theta_v)))
    return terms
