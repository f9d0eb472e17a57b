# /src/depnet/infogeo/__init__.py
# Information geometry of pseudo-Gibbs sampling, computed exactly

from .geometry import (
    m_project,
    kl_to_manifold,
    kl_to_full_conditional,
    fc_divergence,
    pseudo_log_likelihood,
    fc_bregman_function,
    bregman_divergence,
    e_geodesic_point,
    m_geodesic_point,
    orthogonality_residual,
    full_conditional_residual,
    condition_on,
    inference_decomposition,
)
from .chain import (
    MAX_CHAIN_STATES,
    firing_matrix,
    transition_matrix,
    stationary_exact,
    phase_stationaries,
    stationary_ordered_exact,
    visited_phases,
    ordered_output_exact,
    stationary_residual,
    fc_bound_slack,
    theorem3_slack,
)
from .oracles import simplex_grid, grid_argmin_kl

__all__ = [
    "m_project",
    "kl_to_manifold",
    "kl_to_full_conditional",
    "fc_divergence",
    "pseudo_log_likelihood",
    "fc_bregman_function",
    "bregman_divergence",
    "e_geodesic_point",
    "m_geodesic_point",
    "orthogonality_residual",
    "full_conditional_residual",
    "condition_on",
    "inference_decomposition",
    "MAX_CHAIN_STATES",
    "firing_matrix",
    "transition_matrix",
    "stationary_exact",
    "phase_stationaries",
    "stationary_ordered_exact",
    "visited_phases",
    "ordered_output_exact",
    "stationary_residual",
    "fc_bound_slack",
    "theorem3_slack",
    "simplex_grid",
    "grid_argmin_kl",
]
