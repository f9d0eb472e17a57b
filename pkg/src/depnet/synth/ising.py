# /src/depnet/synth/ising.py
# Ising grids with an exact joint table by full enumeration

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.special import logsumexp

from ..core.joint import JointTable
from ..core.space import VarSpace

logger = logging.getLogger(__name__)

# Exact tables enumerate 2^(rows·cols) states.
MAX_ISING_SITES = 26

# Value 0 is spin −1, value 1 is spin +1.
SPINS = np.array([-1.0, 1.0])


@dataclass(frozen=True)
class IsingSpec:
    """rows × cols grid of binary spins with coupling J and field h."""
    rows: int
    cols: int
    coupling: float = 0.4
    field: float = 0.0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid dimensions must be positive; got {self.rows}x{self.cols}")

    @property
    def name(self) -> str:
        return f"Ising{self.rows}x{self.cols}"

    @property
    def sites(self) -> int:
        return self.rows * self.cols

    @property
    def space(self) -> VarSpace:
        return VarSpace.binary(self.sites)

    def site(self, r: int, c: int) -> int:
        """Variable id of grid cell (r, c), row-major."""
        return r * self.cols + c

    def edges(self) -> List[Tuple[int, int]]:
        """Nearest-neighbour pairs ⟨ij⟩ with i < j."""
        pairs = []
        for r in range(self.rows):
            for c in range(self.cols):
                if c + 1 < self.cols:
                    pairs.append((self.site(r, c), self.site(r, c + 1)))
                if r + 1 < self.rows:
                    pairs.append((self.site(r, c), self.site(r + 1, c)))
        return sorted(pairs)

    def to_dict(self) -> Dict[str, Any]:
        return {"rows": self.rows, "cols": self.cols, "coupling": self.coupling, "field": self.field}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "IsingSpec":
        return cls(
            rows=data["rows"],
            cols=data["cols"],
            coupling=data.get("coupling", 0.4),
            field=data.get("field", 0.0),
        )


def _spin_axis(n: int, i: int) -> np.ndarray:
    shape = [1] * n
    shape[i] = 2
    return SPINS.reshape(shape)


def ising_joint(spec: IsingSpec) -> JointTable:
    """p(x) ∝ exp(J Σ_⟨ij⟩ s_i s_j + h Σ_i s_i), normalized by explicit summation."""
    n = spec.sites
    if n > MAX_ISING_SITES:
        raise ValueError(f"{spec.name} has {n} sites; exact tables allow at most {MAX_ISING_SITES}")
    if n >= 25:
        logger.warning(f"Enumerating {2 ** n} states for {spec.name}; this is slow")
    energy = np.zeros((2,) * n)
    for i, j in spec.edges():
        energy += spec.coupling * (_spin_axis(n, i) * _spin_axis(n, j))
    if spec.field:
        for i in range(n):
            energy += spec.field * _spin_axis(n, i)
    log_probs = energy.reshape(-1)
    return JointTable(spec.space, np.exp(log_probs - logsumexp(log_probs)))
