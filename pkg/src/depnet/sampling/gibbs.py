# /src/depnet/sampling/gibbs.py
# Pseudo-Gibbs sampling: free and clamped chains with ordered or random node selection

import logging
from bisect import bisect_right
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .rng import CHUNK, cumulative, seed_streams
from ..core.dataset import Dataset
from ..core.space import Assignment, VarSpace
from ..errors import UndefinedRowError
from ..models.cpt import Cpt
from ..models.depnet import DependencyNetwork

logger = logging.getLogger(__name__)

# Spaces up to this size run on a precomputed state-index table.
LOOKUP_STATES = 2 ** 16


class SelectionMode(str, Enum):
    """How the next node to fire is chosen."""
    ORDERED = "ordered"
    RANDOM = "random"


@dataclass(frozen=True)
class SamplerConfig:
    """Settings of one pseudo-Gibbs run.

    ``burn_in`` and ``thin`` default to the number of nodes. ``initial``
    of None draws a uniform-random starting state from the seed; clamped
    variables always start at their clamped value.
    """
    N: int
    mode: SelectionMode = SelectionMode.RANDOM
    clamps: Dict[int, int] = field(default_factory=dict)
    burn_in: Optional[int] = None
    thin: Optional[int] = None
    seed: int = 0
    initial: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "mode", SelectionMode(self.mode))
        object.__setattr__(self, "clamps", {int(k): int(v) for k, v in dict(self.clamps).items()})
        if self.initial is not None:
            object.__setattr__(self, "initial", tuple(int(v) for v in self.initial))
        if self.N < 1:
            raise ValueError(f"N must be at least 1; got {self.N}")
        if self.burn_in is not None and self.burn_in < 0:
            raise ValueError(f"burn-in must be non-negative; got {self.burn_in}")
        if self.thin is not None and self.thin < 1:
            raise ValueError(f"thinning must be at least 1; got {self.thin}")

    def resolved(self, n: int) -> "SamplerConfig":
        """Copy with burn-in and thinning filled in for an n-node network."""
        return replace(
            self,
            burn_in=n if self.burn_in is None else self.burn_in,
            thin=n if self.thin is None else self.thin,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "mode": self.mode.value,
            "clamps": {str(k): v for k, v in self.clamps.items()},
            "burn_in": self.burn_in,
            "thin": self.thin,
            "seed": self.seed,
            "initial": list(self.initial) if self.initial is not None else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SamplerConfig":
        initial = data.get("initial")
        return cls(
            N=data["N"],
            mode=SelectionMode(data.get("mode", SelectionMode.RANDOM.value)),
            clamps={int(k): int(v) for k, v in data.get("clamps", {}).items()},
            burn_in=data.get("burn_in"),
            thin=data.get("thin"),
            seed=data.get("seed", 0),
            initial=tuple(initial) if initial is not None else None,
        )


@dataclass(frozen=True, eq=False)
class SampleRun:
    """Output data o of one run plus what produced it."""
    outputs: Dataset
    steps_taken: int
    config: SamplerConfig
    initial: Assignment


@dataclass(frozen=True, eq=False)
class Inference:
    """Clamped-sampling estimate of p(U|V=v) as normalized counts N_u/N."""
    query: Tuple[int, ...]
    clamps: Dict[int, int]
    estimate: np.ndarray
    run: SampleRun

    def prob(self, values: Sequence[int]) -> float:
        """Estimated probability of U = values (values in ``query`` order)."""
        return float(self.estimate[tuple(int(v) for v in values)])


# ========== Single Firing ==========

def _draw(cdf: Sequence[float], u: float, node: int, cpt: Cpt, row_index: int) -> int:
    if cdf[0] != cdf[0]:
        raise UndefinedRowError(node, cpt.input_values(row_index))
    value = bisect_right(cdf, u)
    return value if value < len(cdf) else len(cdf) - 1


def fire_node(state: Sequence[int], i: int, cpt: Cpt, rng: np.random.Generator) -> Assignment:
    """Redraw x_i from θ_i(·|y_i) by inverse CDF; every other component is kept."""
    if cpt.child != i:
        raise ValueError(f"CPT belongs to node {cpt.child}, not {i}")
    row_index = cpt.input_index(state)
    cdf = cumulative(cpt.table[row_index]).tolist()
    value = _draw(cdf, float(rng.random()), i, cpt, row_index)
    new_state = list(state)
    new_state[i] = value
    return tuple(new_state)


# ========== Chains ==========

def _cdf_rows(cpt: Cpt) -> List[Optional[List[float]]]:
    """Row CDFs as lists; undefined (NaN) rows become None."""
    return [None if row[0] != row[0] else row for row in cumulative(cpt.table).tolist()]


class _LookupChain:
    """Chain over the joint state index with one CDF per (node, state)."""

    def __init__(self, dn: DependencyNetwork, nodes: Sequence[int], start: Assignment):
        space = dn.space
        grid = space.grid()
        states = np.arange(space.total_states, dtype=np.int64)
        self.dn = dn
        self.space = space
        self.strides = list(space.strides)
        self.rows: List[Optional[List[int]]] = [None] * dn.n
        self.cdfs: List[Optional[List[Optional[List[float]]]]] = [None] * dn.n
        self.base: List[Optional[List[int]]] = [None] * dn.n
        for i in nodes:
            cpt = dn.cpts[i]
            row_index = np.zeros(space.total_states, dtype=np.int64)
            for var, card in zip(cpt.inputs, cpt.input_cards):
                row_index = row_index * card + grid[:, var]
            table = _cdf_rows(cpt)
            self.rows[i] = row_index.tolist()
            self.cdfs[i] = [table[r] for r in self.rows[i]]
            # state index with x_i zeroed; the new value adds value·stride
            self.base[i] = (states - grid[:, i] * space.strides[i]).tolist()
        self.s = space.index(start)

    def sample(self, blocks: Iterator[Tuple[List[int], List[float]]], burn_in: int, thin: int, N: int) -> np.ndarray:
        recorded: List[int] = []
        record = recorded.append
        cdfs, base, strides = self.cdfs, self.base, self.strides
        s = self.s
        t = 0
        mark = burn_in
        for nodes, us in blocks:
            for i, u in zip(nodes, us):
                if t == mark:
                    record(s)
                    mark += thin
                cdf = cdfs[i][s]
                if cdf is None:
                    raise UndefinedRowError(i, self.dn.cpts[i].input_values(self.rows[i][s]))
                s = base[i][s] + bisect_right(cdf, u) * strides[i]
                t += 1
        self.s = s
        return np.stack(np.unravel_index(np.asarray(recorded, dtype=np.int64), self.space.cards), axis=1)


class _GeneralChain:
    """Chain over an explicit assignment for spaces too large to tabulate."""

    def __init__(self, dn: DependencyNetwork, nodes: Sequence[int], start: Assignment):
        self.dn = dn
        self.inputs: List[Optional[Tuple[Tuple[int, int], ...]]] = [None] * dn.n
        self.cdfs: List[Optional[List[Optional[List[float]]]]] = [None] * dn.n
        for i in nodes:
            self.inputs[i] = tuple(zip(dn.cpts[i].inputs, dn.cpts[i].input_cards))
            self.cdfs[i] = _cdf_rows(dn.cpts[i])
        self.state = list(start)

    def sample(self, blocks: Iterator[Tuple[List[int], List[float]]], burn_in: int, thin: int, N: int) -> np.ndarray:
        rows = np.empty((N, self.dn.n), dtype=np.int64)
        inputs, cdfs = self.inputs, self.cdfs
        state = self.state
        r = 0
        t = 0
        mark = burn_in
        for nodes, us in blocks:
            for i, u in zip(nodes, us):
                if t == mark:
                    rows[r] = state
                    r += 1
                    mark += thin
                row = 0
                for var, card in inputs[i]:
                    row = row * card + state[var]
                cdf = cdfs[i][row]
                if cdf is None:
                    raise UndefinedRowError(i, self.dn.cpts[i].input_values(row))
                state[i] = bisect_right(cdf, u)
                t += 1
        return rows


def _firing_blocks(
    dn: DependencyNetwork,
    cfg: SamplerConfig,
    streams: Mapping[str, np.random.Generator],
    total: int
) -> Iterator[Tuple[List[int], List[float]]]:
    """(nodes to fire, uniforms for their values) in blocks of at most CHUNK firings."""
    ordered = cfg.mode is SelectionMode.ORDERED
    if ordered:
        order = np.asarray(dn.fireable(cfg.clamps), dtype=np.int64)
    else:
        weights = dn.weights.renormalized(list(cfg.clamps))
        cum = cumulative(weights)
        last = int(np.flatnonzero(weights > 0)[-1])
    done = 0
    while done < total:
        size = min(CHUNK, total - done)
        if ordered:
            nodes = order[np.arange(done, done + size) % order.size]
        else:
            u = streams["selection"].random(size)
            nodes = np.minimum(np.searchsorted(cum, u, side="right"), last)
        yield nodes.tolist(), streams["values"].random(size).tolist()
        done += size


def _initial_state(space: VarSpace, cfg: SamplerConfig, rng: np.random.Generator) -> Assignment:
    if cfg.initial is not None:
        state = list(space.validate(cfg.initial))
    else:
        state = [int(rng.integers(0, card)) for card in space.cards]
    for var, value in cfg.clamps.items():
        state[var] = value
    return tuple(state)


def run(dn: DependencyNetwork, cfg: SamplerConfig) -> SampleRun:
    """Draw cfg.N outputs: b burn-in firings, then record the state and fire k times, N times.

    Ordered mode fires the unclamped nodes cyclically in id order; random
    mode draws each node from the selection weights renormalized over the
    unclamped nodes. The run is a pure function of (dn, cfg).
    """
    clamps = dn.space.validate_partial(cfg.clamps)
    cfg = replace(cfg, clamps=clamps).resolved(dn.n)
    nodes = dn.fireable(clamps)
    if not nodes:
        raise ValueError("all nodes are clamped; nothing can fire")
    streams = seed_streams(cfg.seed)
    start = _initial_state(dn.space, cfg, streams["initial"])

    total = cfg.burn_in + cfg.N * cfg.thin
    lookup = dn.space.total_states <= LOOKUP_STATES
    chain = _LookupChain(dn, nodes, start) if lookup else _GeneralChain(dn, nodes, start)
    logger.debug(
        f"Sampling {cfg.N} outputs ({cfg.mode.value}, b={cfg.burn_in}, k={cfg.thin}, "
        f"{'lookup' if lookup else 'general'} chain, clamps={clamps})"
    )
    rows = chain.sample(_firing_blocks(dn, cfg, streams, total), cfg.burn_in, cfg.thin, cfg.N)

    return SampleRun(
        outputs=Dataset(dn.space, rows),
        steps_taken=total,
        config=cfg,
        initial=start,
    )


# ========== Clamped Sampling ==========

def clamp_network(
    dn: DependencyNetwork,
    clamps: Mapping[int, int]
) -> Tuple[DependencyNetwork, Tuple[int, ...]]:
    """Reduced network over the unclamped variables with the clamps substituted.

    Returns the network (variables renumbered in ascending id order) and
    the original ids of its variables. Selection weights are renormalized
    over the kept nodes.
    """
    clamps = dn.space.validate_partial(clamps)
    free = tuple(i for i in dn.space.ids if i not in clamps)
    if not free:
        raise ValueError("all nodes are clamped; nothing can fire")
    renumber = {old: new for new, old in enumerate(free)}
    cpts = [dn.cpts[i].restrict(clamps).relabel(renumber) for i in free]
    weights = dn.weights.renormalized(list(clamps))[list(free)]
    reduced = DependencyNetwork.from_cpts(dn.space.sub_space(free), cpts, weights / weights.sum())
    return reduced, free


def infer(
    dn: DependencyNetwork,
    clamps: Mapping[int, int],
    cfg: SamplerConfig,
    query: Optional[Sequence[int]] = None
) -> Inference:
    """Estimate p(U|V=v) by clamped-pseudo-Gibbs sampling.

    ``query`` defaults to every unclamped variable. The estimate has one
    axis per queried variable in ascending id order.
    """
    clamps = dn.space.validate_partial(clamps)
    if query is None:
        query = [i for i in dn.space.ids if i not in clamps]
    query = dn.space.subset(query)
    overlap = sorted(set(query) & set(clamps))
    if overlap:
        raise ValueError(f"queried variables {overlap} are clamped")
    result = run(dn, replace(cfg, clamps=clamps))
    counts = result.outputs.counts(query)
    estimate = (counts / result.outputs.N).reshape(tuple(dn.space.cards[i] for i in query))
    return Inference(query=query, clamps=clamps, estimate=estimate, run=result)
