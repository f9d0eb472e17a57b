# /src/depnet/eval/benchmarks.py
# Benchmark suite: synthetic truths paired with training-set sizes

from dataclasses import dataclass
from typing import List, Sequence, Union

from ..core.joint import JointTable
from ..synth.ising import IsingSpec, ising_joint
from ..synth.random_bn import RandomBnSpec, bn_joint, random_bn

Truth = Union[RandomBnSpec, IsingSpec]

SMALL_N = 1_000
LARGE_N = 100_000

# Seed of the random Bayesian networks used as ground truth.
TRUTH_SEED = 1


@dataclass(frozen=True)
class Benchmark:
    """One dataset: a ground-truth generator and a training-set size."""
    truth: Truth
    N: int
    suffix: str = ""

    @property
    def name(self) -> str:
        return f"{self.truth.name}{self.suffix}"

    @property
    def n(self) -> int:
        return self.truth.n if isinstance(self.truth, RandomBnSpec) else self.truth.sites

    def joint(self) -> JointTable:
        """Exact p* of the generator."""
        if isinstance(self.truth, IsingSpec):
            return ising_joint(self.truth)
        return bn_joint(random_bn(self.truth))


def _suffix(N: int, sizes: Sequence[int]) -> str:
    if len(sizes) == 2:
        return "S" if N == min(sizes) else "L"
    return f"-{N}"


def default_benchmarks(full: bool = False, sizes: Sequence[int] = (SMALL_N, LARGE_N)) -> List[Benchmark]:
    """BN12-20 and Ising4x4 at each size; ``full`` adds BN20-37 and Ising5x5."""
    truths: List[Truth] = [RandomBnSpec(12, 20, seed=TRUTH_SEED), IsingSpec(4, 4)]
    if full:
        truths += [RandomBnSpec(20, 37, seed=TRUTH_SEED), IsingSpec(5, 5)]
    return [Benchmark(truth, N, _suffix(N, sizes)) for truth in truths for N in sizes]
