# /src/depnet/learning/penalty.py
# Structure penalties R_i(Y_i, N): AIC, MDL or none

import math
from enum import Enum


class PenaltyKind(str, Enum):
    """Information criterion used as the structure-search regularizer."""
    AIC = "aic"
    MDL = "mdl"
    NONE = "none"


def degrees_of_freedom(child_card: int, input_states: int) -> int:
    """k_i = (|X_i| − 1)·|Y_i|, with |Y_i| = 1 for no inputs."""
    return (child_card - 1) * input_states


def penalty(kind: PenaltyKind, child_card: int, input_states: int, N: int) -> float:
    """R_i: AIC k/N, MDL (k/2N)·ln N, none 0."""
    kind = PenaltyKind(kind)
    if N < 1:
        raise ValueError("penalty needs N ≥ 1")
    k = degrees_of_freedom(child_card, input_states)
    if kind is PenaltyKind.AIC:
        return k / N
    if kind is PenaltyKind.MDL:
        return k / (2 * N) * math.log(N)
    return 0.0
